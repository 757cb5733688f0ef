//! Generators for the function classes used in the experiments.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore};

use crate::boolfn::{
    check_variables, linear_words, tail_mask, word_count, BooleanFunction, MAX_VARIABLES,
};
use crate::error::{Error, Result};
use crate::rng;
use crate::spectral::{walsh_spectrum, SpectrumClass};

fn check_mask(n: usize, omega: u64) -> Result<()> {
    if omega >> n != 0 {
        return Err(Error::dimension(n, 64 - omega.leading_zeros()));
    }
    Ok(())
}

/// `x -> omega . x`.
pub fn linear(n: usize, omega: u64) -> Result<BooleanFunction> {
    check_variables(n, MAX_VARIABLES)?;
    check_mask(n, omega)?;
    Ok(BooleanFunction::from_raw(n, linear_words(n, omega)))
}

/// `x -> omega . x xor c`.
pub fn affine(n: usize, omega: u64, c: bool) -> Result<BooleanFunction> {
    let l = linear(n, omega)?;
    Ok(if c { !l } else { l })
}

/// Every table bit independent and uniform.
pub fn random_function(n: usize, seed: u64) -> Result<BooleanFunction> {
    random_function_with(n, &mut rng::seeded(seed))
}

pub fn random_function_with<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    check_variables(n, MAX_VARIABLES)?;
    let mut words: Vec<u64> = (0..word_count(n)).map(|_| rng.next_u64()).collect();
    words[0] &= tail_mask(n);
    Ok(BooleanFunction::from_raw(n, words))
}

/// Maiorana-McFarland bent function `f(x, y) = x . perm(y) xor g(y)`, where
/// `x = (x1..x_{n/2})` is the low half of the input and `y` the high half.
pub fn bent_mm(n: usize, perm: &[u64], g: &BooleanFunction) -> Result<BooleanFunction> {
    check_variables(n, MAX_VARIABLES)?;
    if !n.is_multiple_of(2) {
        return Err(Error::value(format!(
            "bent functions need an even variable count, got {n}"
        )));
    }
    let half = n / 2;
    if g.n() != half {
        return Err(Error::dimension(half, g.n()));
    }
    let size = 1usize << half;
    if perm.len() != size {
        return Err(Error::dimension(size, perm.len()));
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size as u64 || std::mem::replace(&mut seen[p as usize], true) {
            return Err(Error::value("perm is not a bijection of {0,1}^(n/2)"));
        }
    }
    let low = (1u64 << half) - 1;
    BooleanFunction::from_fn(n, |i| {
        let (x, y) = (i & low, i >> half);
        ((x & perm[y as usize]).count_ones() % 2 == 1) ^ g.table_bit(y)
    })
}

/// Maiorana-McFarland instance with a uniformly random permutation and
/// random `g`.
pub fn random_bent_mm<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::value(format!(
            "bent functions need an even variable count, got {n}"
        )));
    }
    let mut perm: Vec<u64> = (0..1u64 << (n / 2)).collect();
    perm.shuffle(rng);
    let g = random_function_with(n / 2, rng)?;
    bent_mm(n, &perm, &g)
}

/// `f = (1 xor x_n) g xor x_n h` for bent `g`, `h` on `n - 1` variables.
/// `W_f(w, 0) = W_g(w) + W_h(w)` and `W_f(w, 1) = W_g(w) - W_h(w)`, so every
/// value lies in `{0, +-2^((n+1)/2)}`.
pub fn plateaued_concat(g: &BooleanFunction, h: &BooleanFunction) -> Result<BooleanFunction> {
    if g.n() != h.n() {
        return Err(Error::dimension(g.n(), h.n()));
    }
    for (name, part) in [("g", g), ("h", h)] {
        if walsh_spectrum(part).classify() != SpectrumClass::Bent {
            return Err(Error::value(format!("{name} is not bent")));
        }
    }
    let m = g.n();
    check_variables(m + 1, MAX_VARIABLES)?;
    let split = 1u64 << m;
    BooleanFunction::from_fn(m + 1, |i| {
        if i < split {
            g.table_bit(i)
        } else {
            h.table_bit(i - split)
        }
    })
}

/// Plateaued function on odd `n >= 3` from two random bent halves.
pub fn random_plateaued<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::value(format!(
            "plateaued construction needs odd n >= 3, got {n}"
        )));
    }
    let g = random_bent_mm(n - 1, rng)?;
    let h = random_bent_mm(n - 1, rng)?;
    plateaued_concat(&g, &h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoisyVariant {
    /// Budget `2^(n-3)`.
    Ln,
    /// Budget `floor(1.17 * 2^(n-3))`.
    LnEps,
    Custom,
}

/// A linear function together with a bound on how many table entries may
/// be flipped away from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoisyLinearSpec {
    pub n: usize,
    pub base: u64,
    pub max_errors: u64,
    pub variant: NoisyVariant,
}

fn check_noisy(n: usize, base: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::value(format!(
            "noisy-linear classes need n >= 3, got {n}"
        )));
    }
    check_variables(n, MAX_VARIABLES)?;
    check_mask(n, base)
}

impl NoisyLinearSpec {
    pub fn ln(n: usize, base: u64) -> Result<Self> {
        check_noisy(n, base)?;
        Ok(NoisyLinearSpec {
            n,
            base,
            max_errors: ln_budget(n),
            variant: NoisyVariant::Ln,
        })
    }

    pub fn ln_eps(n: usize, base: u64) -> Result<Self> {
        check_noisy(n, base)?;
        Ok(NoisyLinearSpec {
            n,
            base,
            max_errors: ln_eps_budget(n),
            variant: NoisyVariant::LnEps,
        })
    }

    pub fn custom(n: usize, base: u64, max_errors: u64) -> Result<Self> {
        check_noisy(n, base)?;
        if max_errors > 1 << n {
            return Err(Error::value(format!(
                "budget {max_errors} exceeds the {} table entries",
                1u64 << n
            )));
        }
        Ok(NoisyLinearSpec {
            n,
            base,
            max_errors,
            variant: NoisyVariant::Custom,
        })
    }

    /// The `epsilon` with `(1 + 3 - 2 sqrt 2 - 4 epsilon) 2^(n-3) = budget`.
    /// For the `LnEps` budget this is `(2.83 - 2 sqrt 2) / 4`, about 3.93e-4,
    /// up to flooring.
    pub fn implied_epsilon(&self) -> f64 {
        let ratio = self.max_errors as f64 / (1u64 << (self.n - 3)) as f64;
        (4.0 - 2.0 * std::f64::consts::SQRT_2 - ratio) / 4.0
    }

    /// Lower bound on `(W_f(base) / 2^n)^2` over the class: with `d` flips,
    /// `W_f(base) = 2^n - 2d`.
    pub fn success_floor(&self) -> f64 {
        let len = (1u64 << self.n) as f64;
        ((len - 2.0 * self.max_errors as f64) / len).powi(2)
    }
}

pub fn ln_budget(n: usize) -> u64 {
    1 << (n - 3)
}

pub fn ln_eps_budget(n: usize) -> u64 {
    (117u64 << (n - 3)) / 100
}

/// A member of a noisy-linear class and how many entries were flipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoisyDraw {
    pub function: BooleanFunction,
    pub flips: u64,
}

/// Flips a uniformly random set of `e` entries of the base linear function,
/// `e` uniform in `0..=max_errors`.
pub fn noisy_linear(spec: &NoisyLinearSpec, seed: u64) -> Result<NoisyDraw> {
    noisy_linear_with(spec, &mut rng::seeded(seed), false)
}

/// As [`noisy_linear`]; `worst_case` pins `e` to the budget.
pub fn noisy_linear_with<R: RngCore + ?Sized>(
    spec: &NoisyLinearSpec,
    rng: &mut R,
    worst_case: bool,
) -> Result<NoisyDraw> {
    check_noisy(spec.n, spec.base)?;
    let len = 1usize << spec.n;
    if spec.max_errors > len as u64 {
        return Err(Error::value("budget exceeds the table size"));
    }
    let flips = if worst_case {
        spec.max_errors
    } else {
        rng.random_range(0..=spec.max_errors)
    };
    let mut words = linear_words(spec.n, spec.base);
    for pos in index::sample(rng, len, flips as usize) {
        words[pos >> 6] ^= 1 << (pos & 63);
    }
    Ok(NoisyDraw {
        function: BooleanFunction::from_raw(spec.n, words),
        flips,
    })
}

/// Largest `n` for which the exact class size is computed.
pub const CLASS_SIZE_MAX_N: usize = 16;

fn check_class_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::value(format!("class size needs n >= 3, got {n}")));
    }
    if n > CLASS_SIZE_MAX_N {
        return Err(Error::Capacity {
            n,
            cap: CLASS_SIZE_MAX_N,
        });
    }
    Ok(())
}

/// `sum_{i <= k} C(u, i)`.
pub fn binomial_prefix_sum(u: u64, k: u64) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 0..k.min(u) {
        term = term * (u - i) / (i + 1);
        sum += &term;
    }
    sum
}

/// Size of one distance ball: functions within `2^(n-3)` of a fixed linear
/// function.
pub fn ln_ball_size(n: usize) -> Result<BigUint> {
    check_class_n(n)?;
    Ok(binomial_prefix_sum(1 << n, ln_budget(n)))
}

/// `|L_n| = 2^n * sum_{i=0}^{2^(n-3)} C(2^n, i)`.
pub fn class_size_ln(n: usize) -> Result<BigUint> {
    Ok(ln_ball_size(n)? << n)
}

/// `H(l) = -l log2 l - (1 - l) log2 (1 - l)`.
pub fn binary_entropy(lambda: f64) -> f64 {
    if lambda <= 0.0 || lambda >= 1.0 {
        return 0.0;
    }
    -lambda * lambda.log2() - (1.0 - lambda) * (1.0 - lambda).log2()
}

pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).log2() + shift as f64
}

/// The quantities around `|L_n|`, all as base-2 logarithms.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClassSizeBounds {
    pub n: usize,
    /// `2^(n-3)`, from `2^(2^(n-3)) < |L_n|`.
    pub log2_lower: f64,
    /// One ball around a linear function.
    pub log2_ball: f64,
    pub log2_exact: f64,
    /// `2^n H(1/8)`; bounds one ball, not the union of `2^n` balls.
    pub log2_upper: f64,
    pub entropy_one_eighth: f64,
}

pub fn class_size_bounds(n: usize) -> Result<ClassSizeBounds> {
    let ball = ln_ball_size(n)?;
    let exact = class_size_ln(n)?;
    let h = binary_entropy(0.125);
    Ok(ClassSizeBounds {
        n,
        log2_lower: ln_budget(n) as f64,
        log2_ball: log2_big(&ball),
        log2_exact: log2_big(&exact),
        log2_upper: (1u64 << n) as f64 * h,
        entropy_one_eighth: h,
    })
}
