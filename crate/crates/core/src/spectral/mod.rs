//! Walsh spectra and the cryptographic measures read off them.
//!
//! For `f` on `n` variables, `W_f(w) = sum_x (-1)^(f(x) xor w.x)`. The whole
//! spectrum is computed with the in-place butterfly of [`fwt_in_place`]:
//! `n` stages, stage `i` pairing entries `2^i` apart inside blocks of
//! `2^(i+1)` and replacing `(a, b)` with `(a + b, a - b)`. All arithmetic is
//! exact `i64`.

mod report;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};

pub use report::{analyze, AnalyticsReport};

/// Arrays at least this long are transformed with rayon.
const PAR_THRESHOLD: usize = 1 << 16;
/// Chunk that stays cache-resident for the low stages.
const LOW_CHUNK: usize = 1 << 12;

#[inline]
fn butterfly(lo: &mut [i64], hi: &mut [i64]) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = x + y;
        *b = x - y;
    }
}

/// One butterfly stage: entries `half` apart inside blocks of `2 * half`.
pub fn fwt_stage(values: &mut [i64], half: usize) {
    for block in values.chunks_mut(2 * half) {
        let (lo, hi) = block.split_at_mut(half);
        butterfly(lo, hi);
    }
}

/// Unnormalised Walsh-Hadamard transform of `values` in place.
///
/// Panics if the length is not a power of two. Large inputs are split across
/// threads; since every stage only combines disjoint pairs and the
/// arithmetic is exact, the result is identical to the sequential loop.
pub fn fwt_in_place(values: &mut [i64]) {
    let len = values.len();
    assert!(
        len.is_power_of_two(),
        "transform length {len} is not a power of two"
    );
    if len < PAR_THRESHOLD {
        let mut half = 1;
        while half < len {
            fwt_stage(values, half);
            half *= 2;
        }
        return;
    }

    values.par_chunks_mut(LOW_CHUNK).for_each(|chunk| {
        let mut half = 1;
        while half < LOW_CHUNK {
            fwt_stage(chunk, half);
            half *= 2;
        }
    });
    let mut half = LOW_CHUNK;
    while half < len {
        for block in values.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            lo.par_chunks_mut(LOW_CHUNK)
                .zip(hi.par_chunks_mut(LOW_CHUNK))
                .for_each(|(l, h)| butterfly(l, h));
        }
        half *= 2;
    }
}

/// `(-1)^f(x)` for every `x`; reads the table once.
fn sign_vector(f: &BooleanFunction) -> Vec<i64> {
    f.record_table_read();
    let len = f.len();
    let mut out = Vec::with_capacity(len);
    for &word in f.words() {
        let take = len.min(64);
        out.extend((0..take).map(|b| 1 - 2 * ((word >> b) & 1) as i64));
    }
    out
}

pub fn walsh_spectrum(f: &BooleanFunction) -> WalshSpectrum {
    let mut w = sign_vector(f);
    fwt_in_place(&mut w);
    let spectrum = WalshSpectrum { n: f.n(), w };
    debug_assert!(spectrum.satisfies_parseval());
    spectrum
}

/// The sign vector followed by the array after each of the `n` stages, run
/// strictly sequentially. Mostly useful for showing the transform at work.
pub fn walsh_stages(f: &BooleanFunction) -> Vec<Vec<i64>> {
    let mut w = sign_vector(f);
    let mut stages = vec![w.clone()];
    for i in 0..f.n() {
        fwt_stage(&mut w, 1 << i);
        stages.push(w.clone());
    }
    stages
}

fn check_mask(n: usize, omega: u64) -> Result<()> {
    if omega >> n != 0 {
        return Err(Error::dimension(n, 64 - omega.leading_zeros()));
    }
    Ok(())
}

#[inline]
fn character(f: &BooleanFunction, omega: u64, x: u64) -> i64 {
    let e = f.table_bit(x) as u32 ^ ((x & omega).count_ones() & 1);
    1 - 2 * e as i64
}

/// `W_f(omega)` by direct summation over all `2^n` inputs.
pub fn walsh_point(f: &BooleanFunction, omega: u64) -> Result<i64> {
    check_mask(f.n(), omega)?;
    f.record_table_read();
    Ok((0..f.len() as u64).map(|x| character(f, omega, x)).sum())
}

/// The Walsh sum restricted to the inputs in `subset`.
pub fn restricted_walsh(f: &BooleanFunction, omega: u64, subset: &BTreeSet<u64>) -> Result<i64> {
    check_mask(f.n(), omega)?;
    if let Some(&x) = subset.iter().next_back() {
        check_mask(f.n(), x)?;
    }
    f.record_queries(subset.len() as u64);
    Ok(subset.iter().map(|&x| character(f, omega, x)).sum())
}

/// Shape of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumClass {
    /// `n` even and `|W| = 2^(n/2)` everywhere.
    Bent,
    /// Every value in `{0, +2^k, -2^k}`.
    Plateaued(u32),
    General,
}

impl fmt::Display for SpectrumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumClass::Bent => f.write_str("Bent"),
            SpectrumClass::Plateaued(k) => write!(f, "Plateaued({k})"),
            SpectrumClass::General => f.write_str("General"),
        }
    }
}

impl Serialize for SpectrumClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Best linear approximation: `value > 0` means `f` agrees with `omega . x`
/// more often than not, `value < 0` means it agrees with `1 xor omega . x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxCorrelation {
    pub omega: u64,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    w: Vec<i64>,
}

impl WalshSpectrum {
    /// Wraps raw values. The length must be `2^n`; Parseval is not checked.
    pub fn from_values(n: usize, w: Vec<i64>) -> Result<Self> {
        if n > crate::boolfn::MAX_VARIABLES {
            return Err(Error::Capacity {
                n,
                cap: crate::boolfn::MAX_VARIABLES,
            });
        }
        if w.len() != 1 << n {
            return Err(Error::dimension(1u64 << n, w.len()));
        }
        Ok(WalshSpectrum { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.w
    }

    pub fn into_values(self) -> Vec<i64> {
        self.w
    }

    pub fn get(&self, omega: u64) -> i64 {
        self.w[omega as usize]
    }

    /// Points with a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<u64> {
        (0..self.w.len() as u64)
            .filter(|&z| self.w[z as usize] != 0)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.w.iter().filter(|&&v| v != 0).count()
    }

    pub fn parseval_sum(&self) -> u128 {
        self.w
            .iter()
            .map(|&v| (v as i128 * v as i128) as u128)
            .sum()
    }

    pub fn satisfies_parseval(&self) -> bool {
        self.parseval_sum() == 1u128 << (2 * self.n)
    }

    pub fn max_abs(&self) -> u64 {
        self.w.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// `2^(n-1) - max|W| / 2`, the distance to the nearest affine function.
    pub fn nonlinearity(&self) -> u64 {
        ((1u64 << self.n) / 2).saturating_sub(self.max_abs() / 2)
    }

    /// Largest `m` with `W(w) = 0` for every `wt(w) <= m`, or `None` when
    /// `W(0) != 0` (unbalanced).
    pub fn resiliency_order(&self) -> Option<u32> {
        if self.w[0] != 0 {
            return None;
        }
        // An all-zero spectrum never comes from a function; treat it as fully resilient.
        let lightest = (0..self.w.len() as u64)
            .filter(|&z| self.w[z as usize] != 0)
            .map(|z| z.count_ones())
            .min()
            .unwrap_or(self.n as u32 + 1);
        Some(lightest - 1)
    }

    pub fn classify(&self) -> SpectrumClass {
        let max = self.max_abs();
        if self.n.is_multiple_of(2) {
            let target = 1u64 << (self.n / 2);
            if self.w.iter().all(|v| v.unsigned_abs() == target) {
                return SpectrumClass::Bent;
            }
        }
        if max.is_power_of_two()
            && self
                .w
                .iter()
                .all(|v| v.unsigned_abs() == 0 || v.unsigned_abs() == max)
        {
            return SpectrumClass::Plateaued(max.trailing_zeros());
        }
        SpectrumClass::General
    }

    /// Smallest `omega` attaining `max |W|`, with its signed value.
    pub fn max_correlation(&self) -> MaxCorrelation {
        let max = self.max_abs();
        let omega = self
            .w
            .iter()
            .position(|v| v.unsigned_abs() == max)
            .expect("spectrum is nonempty");
        MaxCorrelation {
            omega: omega as u64,
            value: self.w[omega],
        }
    }

    /// Text dump: one line per point, `<omega as x_n..x_1> <W>`.
    pub fn to_dump(&self) -> String {
        let mut out = String::with_capacity(self.w.len() * (self.n + 8));
        for (z, v) in self.w.iter().enumerate() {
            out.push_str(&mask_to_binary(z as u64, self.n));
            out.push(' ');
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

/// `omega` as `n` binary digits, `x_n` first.
pub fn mask_to_binary(omega: u64, n: usize) -> String {
    format!("{omega:0n$b}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn worked_fn() -> BooleanFunction {
        BooleanFunction::from_bits(3, &[1, 1, 0, 1, 1, 0, 0, 0]).unwrap()
    }

    fn from_fn(n: usize, f: impl FnMut(u64) -> bool) -> BooleanFunction {
        BooleanFunction::from_fn(n, f).unwrap()
    }

    /// Direct definition, independent of everything above.
    fn dft(f: &BooleanFunction) -> Vec<i64> {
        let bits = f.to_bits();
        (0..bits.len())
            .map(|w| {
                bits.iter()
                    .enumerate()
                    .map(|(x, &b)| {
                        if (b as u32 + (x & w).count_ones()).is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    fn bent4() -> BooleanFunction {
        from_fn(4, |x| ((x & x >> 1) ^ (x >> 2 & x >> 3)) & 1 == 1)
    }

    #[test]
    fn worked_example_stages() {
        let stages = walsh_stages(&worked_fn());
        assert_eq!(stages[0], vec![-1, -1, 1, -1, -1, 1, 1, 1]);
        assert_eq!(stages[1], vec![-2, 0, 0, 2, 0, -2, 2, 0]);
        assert_eq!(stages[2], vec![-2, 2, -2, -2, 2, -2, -2, -2]);
        assert_eq!(stages[3], vec![0, 0, -4, -4, -4, 4, 0, 0]);
        assert_eq!(stages[3], dft(&worked_fn()));
        assert_eq!(walsh_spectrum(&worked_fn()).values(), &stages[3][..]);
    }

    #[test]
    fn constant_zero_spectrum() {
        let s = walsh_spectrum(&BooleanFunction::zero(3).unwrap());
        assert_eq!(s.values(), &[8, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn spectrum_records_a_full_table_read() {
        let f = worked_fn();
        walsh_spectrum(&f);
        assert_eq!(f.query_count(), 8);
        walsh_point(&f, 3).unwrap();
        assert_eq!(f.query_count(), 16);
    }

    #[test]
    fn parallel_path_matches_sequential() {
        let mut state = 0x2545_F491_4F6C_DD1Du64;
        let n = 18;
        let f = from_fn(n, |_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state & 1 == 1
        });
        let fast = walsh_spectrum(&f);
        let slow = walsh_stages(&f).pop().unwrap();
        assert_eq!(fast.values(), &slow[..]);
        assert!(fast.satisfies_parseval());
    }

    #[test]
    fn walsh_point_examples() {
        assert_eq!(walsh_point(&worked_fn(), 0b010).unwrap(), -4);
        for omega in 0..16u64 {
            let l = from_fn(4, |x| (x & omega).count_ones() % 2 == 1);
            assert_eq!(walsh_point(&l, omega).unwrap(), 16);
        }
        assert!(walsh_point(&worked_fn(), 8).is_err());
    }

    #[test]
    fn restricted_walsh_examples() {
        let f = worked_fn();
        let all: BTreeSet<u64> = (0..8).collect();
        for omega in 0..8 {
            assert_eq!(
                restricted_walsh(&f, omega, &all).unwrap(),
                walsh_point(&f, omega).unwrap()
            );
        }
        assert_eq!(restricted_walsh(&f, 5, &BTreeSet::new()).unwrap(), 0);
        let wide: BTreeSet<u64> = [1, 9].into_iter().collect();
        assert!(matches!(
            restricted_walsh(&f, 0, &wide),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn nonlinearity_examples() {
        let s = walsh_spectrum(&bent4());
        assert_eq!(s.nonlinearity(), 6);
        assert_eq!(s.nonlinearity(), (1 << 3) - (1 << 1));
        for omega in 0..8u64 {
            for c in [false, true] {
                let a = from_fn(3, |x| ((x & omega).count_ones() % 2 == 1) ^ c);
                assert_eq!(walsh_spectrum(&a).nonlinearity(), 0);
            }
        }
        assert_eq!(walsh_spectrum(&worked_fn()).nonlinearity(), 2);
    }

    #[test]
    fn resiliency_examples() {
        let parity = from_fn(3, |x| x.count_ones() % 2 == 1);
        assert_eq!(walsh_spectrum(&parity).resiliency_order(), Some(2));
        assert_eq!(
            walsh_spectrum(&BooleanFunction::zero(3).unwrap()).resiliency_order(),
            None
        );
        assert_eq!(walsh_spectrum(&worked_fn()).resiliency_order(), Some(0));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(walsh_spectrum(&bent4()).classify(), SpectrumClass::Bent);
        assert_eq!(
            walsh_spectrum(&worked_fn()).classify(),
            SpectrumClass::Plateaued(2)
        );
        let and3 = from_fn(3, |x| x == 7);
        let s = walsh_spectrum(&and3);
        assert_eq!(s.values(), &[6, 2, 2, -2, 2, -2, -2, 2]);
        assert_eq!(s.classify(), SpectrumClass::General);
        assert_eq!(SpectrumClass::Plateaued(2).to_string(), "Plateaued(2)");
        assert_eq!(
            serde_json::to_string(&SpectrumClass::Bent).unwrap(),
            "\"Bent\""
        );
    }

    #[test]
    fn max_correlation_examples() {
        for omega in 0..8u64 {
            let l = from_fn(3, |x| (x & omega).count_ones() % 2 == 1);
            assert_eq!(
                walsh_spectrum(&l).max_correlation(),
                MaxCorrelation { omega, value: 8 }
            );
        }
        assert_eq!(
            walsh_spectrum(&worked_fn()).max_correlation(),
            MaxCorrelation {
                omega: 2,
                value: -4
            }
        );
        assert_eq!(
            walsh_spectrum(&BooleanFunction::one(3).unwrap()).max_correlation(),
            MaxCorrelation {
                omega: 0,
                value: -8
            }
        );
    }

    #[test]
    fn dump_format() {
        let dump = walsh_spectrum(&worked_fn()).to_dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[0], "000 0");
        assert_eq!(lines[2], "010 -4");
        assert_eq!(lines[5], "101 4");
    }

    #[test]
    fn from_values_checks_length() {
        assert!(WalshSpectrum::from_values(3, vec![0; 7]).is_err());
        assert!(WalshSpectrum::from_values(3, vec![8, 0, 0, 0, 0, 0, 0, 0])
            .unwrap()
            .satisfies_parseval());
    }

    #[test]
    fn exhaustive_n3_against_dft() {
        for t in 0u64..256 {
            let f = BooleanFunction::from_words(3, vec![t]).unwrap();
            let s = walsh_spectrum(&f);
            assert_eq!(s.values(), &dft(&f)[..]);
            assert!(s.satisfies_parseval());
            assert_eq!(s.get(0), 8 - 2 * f.weight() as i64);
        }
    }

    fn random_function(n: usize) -> impl Strategy<Value = BooleanFunction> {
        proptest::collection::vec(0u8..=1, 1 << n)
            .prop_map(move |bits| BooleanFunction::from_bits(n, &bits).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn spectrum_matches_dft(f in (1usize..=7).prop_flat_map(random_function)) {
            let s = walsh_spectrum(&f);
            prop_assert_eq!(s.values(), &dft(&f)[..]);
        }

        #[test]
        fn parseval_and_parity(f in random_function(10)) {
            let s = walsh_spectrum(&f);
            prop_assert!(s.satisfies_parseval());
            prop_assert!(s.values().iter().all(|v| v % 2 == 0));
            prop_assert_eq!(s.get(0), 1024 - 2 * f.weight() as i64);
            prop_assert_eq!(f.is_balanced(), s.get(0) == 0);
        }

        #[test]
        fn complement_negates(f in random_function(6)) {
            let s = walsh_spectrum(&f);
            let c = walsh_spectrum(&!&f);
            let negated: Vec<i64> = s.values().iter().map(|v| -v).collect();
            prop_assert_eq!(c.values(), &negated[..]);
        }

        #[test]
        fn linear_shift(f in random_function(6), omega in 0u64..64) {
            let s = walsh_spectrum(&f);
            let g = walsh_spectrum(&f.xor_linear(omega).unwrap());
            for u in 0..64u64 {
                prop_assert_eq!(g.get(u), s.get(u ^ omega));
            }
        }

        #[test]
        fn quarter_weight_iff_half_w0(f in random_function(5)) {
            let s = walsh_spectrum(&f);
            prop_assert_eq!(f.weight() == 8, s.get(0) == 16);
            prop_assert_eq!(f.weight() == 24, s.get(0) == -16);
        }

        #[test]
        fn point_agrees_with_spectrum(f in random_function(8), omega in 0u64..256) {
            prop_assert_eq!(walsh_point(&f, omega).unwrap(), walsh_spectrum(&f).get(omega));
        }
    }
}
