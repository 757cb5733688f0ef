//! Truth-table representation of single-output Boolean functions.
//!
//! A function on `n` variables is stored as its `2^n`-bit truth table, packed
//! into 64-bit words. Input `x = (x1, ..., xn)` lives at index
//! `x1 + 2*x2 + ... + 2^(n-1)*xn`, so `x1` is the least-significant bit of the
//! index and row order is `f(0,..,0), f(1,0,..,0), f(0,1,0,..,0), ...`.
//!
//! [`BooleanFunction`] doubles as the black-box oracle of the query model: every
//! call to [`BooleanFunction::evaluate`] is counted, and whole-table consumers
//! (the fast Walsh transform, for instance) record `2^n` reads at once.

mod anf;
pub mod tt;

use std::fmt;
use std::ops::Not;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub use anf::AnfPolynomial;

/// Hard upper bound on the variable count. Table indices must fit in `u64`
/// and `2^n` in `usize` on 64-bit targets with headroom.
pub const MAX_VARIABLES: usize = 30;

/// Default variable cap: a spectrum at `n = 26` is 2^26 `i64`s, about 0.5 GB.
pub const DEFAULT_N_MAX: usize = 26;

/// `VAR_WORDS[j]` has bit `i` set iff bit `j` of `i` is set, i.e. it is the
/// first 64 entries of the truth table of `x_{j+1}`.
pub(crate) const VAR_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

pub(crate) fn check_variables(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_VARIABLES);
    if n == 0 || n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(())
}

pub(crate) fn word_count(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

/// Mask of the valid bits in the (single) word of a function with `n < 6`.
pub(crate) fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// Packed truth table of `x -> omega . x (mod 2)`.
pub(crate) fn linear_words(n: usize, omega: u64) -> Vec<u64> {
    let low = (0..6)
        .filter(|&j| omega >> j & 1 == 1)
        .fold(0u64, |acc, j| acc ^ VAR_WORDS[j]);
    let high = omega >> 6;
    let mut words: Vec<u64> = (0..word_count(n) as u64)
        .map(|k| {
            if (k & high).count_ones() & 1 == 1 {
                !low
            } else {
                low
            }
        })
        .collect();
    words[0] &= tail_mask(n);
    words
}

/// In-place binary Möbius transform over packed words. It is an involution,
/// so the same routine maps truth table to ANF and back.
pub(crate) fn mobius_words(n: usize, words: &mut [u64]) {
    const LOW_HALVES: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    for (j, mask) in LOW_HALVES.iter().enumerate().take(n.min(6)) {
        let shift = 1u32 << j;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    let mut stride = 1;
    while stride < words.len() {
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        stride *= 2;
    }
}

/// An `n`-variable Boolean function together with its oracle query counters.
///
/// The table is immutable after construction. The counters are atomics so a
/// shared `&BooleanFunction` can be queried from several threads.
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
    queries: AtomicU64,
    quantum_queries: AtomicU64,
}

impl BooleanFunction {
    /// Builds a function from `2^n` table entries, each 0 or 1.
    pub fn from_bits(n: usize, bits: &[u8]) -> Result<Self> {
        Self::from_bits_with_cap(n, bits, DEFAULT_N_MAX)
    }

    pub fn from_bits_with_cap(n: usize, bits: &[u8], cap: usize) -> Result<Self> {
        check_variables(n, cap)?;
        let len = 1usize << n;
        if bits.len() != len {
            return Err(Error::dimension(len, bits.len()));
        }
        let mut words = vec![0u64; word_count(n)];
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => words[i >> 6] |= 1 << (i & 63),
                other => {
                    return Err(Error::value(format!(
                        "table entry {i} is {other}, expected 0 or 1"
                    )))
                }
            }
        }
        Ok(Self::from_raw(n, words))
    }

    /// Builds a function from packed words (bit `i & 63` of word `i >> 6` is
    /// `f` at index `i`). Bits beyond `2^n` must be zero.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_variables(n, MAX_VARIABLES)?;
        if words.len() != word_count(n) {
            return Err(Error::dimension(word_count(n), words.len()));
        }
        if words[0] & !tail_mask(n) != 0 {
            return Err(Error::value("bits set beyond the 2^n table entries"));
        }
        Ok(Self::from_raw(n, words))
    }

    /// Tabulates `f` over all `2^n` inputs.
    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        check_variables(n, MAX_VARIABLES)?;
        let mut words = vec![0u64; word_count(n)];
        for x in 0..1u64 << n {
            if f(x) {
                words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(Self::from_raw(n, words))
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_variables(n, MAX_VARIABLES)?;
        Ok(Self::from_raw(n, vec![0; word_count(n)]))
    }

    pub fn one(n: usize) -> Result<Self> {
        Ok(!Self::zero(n)?)
    }

    pub(crate) fn from_raw(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        debug_assert_eq!(words[0] & !tail_mask(n), 0);
        BooleanFunction {
            n,
            words,
            queries: AtomicU64::new(0),
            quantum_queries: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of table entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Table entry at index `x` without touching the query counter. Callers
    /// reading the whole table should account for it with
    /// [`record_table_read`](Self::record_table_read).
    ///
    /// Panics if `x >= 2^n`.
    #[inline]
    pub fn table_bit(&self, x: u64) -> bool {
        assert!(
            x < 1u64 << self.n,
            "index {x} out of range for n = {}",
            self.n
        );
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// The truth table as one `u8` (0 or 1) per entry.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len() as u64)
            .map(|x| self.table_bit(x) as u8)
            .collect()
    }

    /// Single oracle query: `f(x)` for the input whose index is `x`.
    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >> self.n != 0 {
            return Err(Error::dimension(self.n, 64 - x.leading_zeros()));
        }
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(self.table_bit(x))
    }

    /// Single oracle query with the input given as `[x1, ..., xn]`.
    pub fn evaluate_bits(&self, x: &[u8]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::dimension(self.n, x.len()));
        }
        let mut index = 0u64;
        for (j, &b) in x.iter().enumerate() {
            match b {
                0 => {}
                1 => index |= 1 << j,
                other => return Err(Error::value(format!("input bit x{} is {other}", j + 1))),
            }
        }
        self.evaluate(index)
    }

    /// Classical oracle queries made so far.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Accounts for reading the whole table: `2^n` classical queries.
    pub fn record_table_read(&self) {
        self.queries.fetch_add(1 << self.n, Ordering::Relaxed);
    }

    pub(crate) fn record_queries(&self, k: u64) {
        self.queries.fetch_add(k, Ordering::Relaxed);
    }

    /// Applications of the quantum oracle `U_f` made so far.
    pub fn quantum_query_count(&self) -> u64 {
        self.quantum_queries.load(Ordering::Relaxed)
    }

    pub fn record_quantum_query(&self) {
        self.quantum_queries.fetch_add(1, Ordering::Relaxed);
    }

    /// Hamming weight of the truth table.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.n - 1)
    }

    /// Hamming distance between the truth tables of `self` and `other`.
    pub fn distance(&self, other: &BooleanFunction) -> Result<u64> {
        if self.n != other.n {
            return Err(Error::dimension(self.n, other.n));
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| u64::from((a ^ b).count_ones()))
            .sum())
    }

    /// Pointwise sum over GF(2).
    pub fn xor(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        if self.n != other.n {
            return Err(Error::dimension(self.n, other.n));
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self::from_raw(self.n, words))
    }

    /// `x -> f(x) xor (omega . x)`.
    pub fn xor_linear(&self, omega: u64) -> Result<BooleanFunction> {
        if omega >> self.n != 0 {
            return Err(Error::dimension(self.n, 64 - omega.leading_zeros()));
        }
        let words = self
            .words
            .iter()
            .zip(linear_words(self.n, omega))
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self::from_raw(self.n, words))
    }

    pub fn to_anf(&self) -> AnfPolynomial {
        let mut coeffs = self.words.clone();
        mobius_words(self.n, &mut coeffs);
        AnfPolynomial::from_raw(self.n, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.to_anf().degree()
    }

    /// Hex form of the table, most-significant nibble first (see [`tt`]).
    pub fn to_hex(&self) -> String {
        tt::table_to_hex(self)
    }
}

impl Clone for BooleanFunction {
    fn clone(&self) -> Self {
        BooleanFunction {
            n: self.n,
            words: self.words.clone(),
            queries: AtomicU64::new(self.query_count()),
            quantum_queries: AtomicU64::new(self.quantum_query_count()),
        }
    }
}

/// Equality of the underlying functions; query counters are ignored.
impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for BooleanFunction {}

impl std::hash::Hash for BooleanFunction {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BooleanFunction")
            .field("n", &self.n)
            .field("table", &self.to_hex())
            .field("queries", &self.query_count())
            .finish()
    }
}

impl Not for BooleanFunction {
    type Output = BooleanFunction;

    fn not(mut self) -> BooleanFunction {
        for w in &mut self.words {
            *w = !*w;
        }
        self.words[0] &= tail_mask(self.n);
        self
    }
}

impl Not for &BooleanFunction {
    type Output = BooleanFunction;

    fn not(self) -> BooleanFunction {
        !BooleanFunction::from_raw(self.n, self.words.clone())
    }
}
