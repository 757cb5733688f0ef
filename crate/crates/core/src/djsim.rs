//! State-vector simulation of the Deutsch-Jozsa circuit.
//!
//! The circuit is `H^n` on `|0..0>`, the oracle `U_f: |x>|y> -> |x>|y xor f(x)>`
//! with the ancilla prepared in `(|0> - |1>)/sqrt(2)`, then `H^n` again and a
//! measurement of the `n`-qubit register. The ancilla is an eigenvector of
//! every `U_f` and never entangles, so it is factored out: the oracle acts on
//! the register as the phase flip `|x> -> (-1)^f(x) |x>`.
//!
//! Two representations of the final state are kept:
//!
//! - [`DjState`] evolves `f64` amplitudes gate layer by gate layer.
//! - [`dj_evolve_exact`] carries integer numerators over the common
//!   denominator `2^n`. Each Hadamard layer contributes `2^(-n/2)` and the
//!   initial layer another `2^(-n/2)`, so after the circuit every amplitude
//!   is `k / 2^n` with `k` an integer. Measurement probabilities are then
//!   exact dyadic rationals `k^2 / 2^(2n)`, which is what sampling uses.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::rng;
use crate::spectral::mask_to_binary;

/// Largest register simulated by default: `2^20` amplitudes.
pub const DEFAULT_SIM_CAP: usize = 20;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(())
}

/// Real amplitudes of the `n`-qubit register (ancilla factored out).
#[derive(Debug, Clone, PartialEq)]
pub struct DjState {
    n: usize,
    amp: Vec<f64>,
}

impl DjState {
    /// `|0..0>`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_cap(n, DEFAULT_SIM_CAP)
    }

    pub fn zero_with_cap(n: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        let mut amp = vec![0.0; 1 << n];
        amp[0] = 1.0;
        Ok(DjState { n, amp })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a * a).sum()
    }

    /// Born-rule probabilities `amp[z]^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|a| a * a).collect()
    }

    /// `H` on every qubit.
    pub fn apply_hadamard_layer(&mut self) {
        for q in 0..self.n {
            let half = 1 << q;
            for block in self.amp.chunks_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * FRAC_1_SQRT_2;
                    *b = (x - y) * FRAC_1_SQRT_2;
                }
            }
        }
    }

    /// One application of `U_f` with the ancilla in the minus state.
    pub fn apply_phase_oracle(&mut self, f: &BooleanFunction) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::dimension(self.n, f.n()));
        }
        f.record_quantum_query();
        for (x, a) in self.amp.iter_mut().enumerate() {
            if f.table_bit(x as u64) {
                *a = -*a;
            }
        }
        Ok(())
    }
}

/// The four register states `|psi0>` (input) through `|psi3>` (before
/// measurement).
pub fn dj_trace(f: &BooleanFunction) -> Result<[DjState; 4]> {
    dj_trace_with_cap(f, DEFAULT_SIM_CAP)
}

pub fn dj_trace_with_cap(f: &BooleanFunction, cap: usize) -> Result<[DjState; 4]> {
    let psi0 = DjState::zero_with_cap(f.n(), cap)?;
    let mut psi1 = psi0.clone();
    psi1.apply_hadamard_layer();
    let mut psi2 = psi1.clone();
    psi2.apply_phase_oracle(f)?;
    let mut psi3 = psi2.clone();
    psi3.apply_hadamard_layer();
    Ok([psi0, psi1, psi2, psi3])
}

/// Final register state `|psi3>` in floating point.
pub fn dj_evolve(f: &BooleanFunction) -> Result<DjState> {
    dj_evolve_with_cap(f, DEFAULT_SIM_CAP)
}

pub fn dj_evolve_with_cap(f: &BooleanFunction, cap: usize) -> Result<DjState> {
    let mut state = DjState::zero_with_cap(f.n(), cap)?;
    state.apply_hadamard_layer();
    state.apply_phase_oracle(f)?;
    state.apply_hadamard_layer();
    Ok(state)
}

/// Final amplitudes as numerators over `2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactAmplitudes {
    n: usize,
    numerators: Vec<i64>,
}

impl ExactAmplitudes {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let scale = (1u64 << self.n) as f64;
        self.numerators.iter().map(|&k| k as f64 / scale).collect()
    }
}

/// Runs the circuit in exact arithmetic. After the first Hadamard layer the
/// register is uniform, so up to the factor `2^(-n/2)` it is the all-ones
/// vector; the oracle flips signs; the second layer is applied unnormalised
/// and its `2^(-n/2)` is folded into the denominator.
pub fn dj_evolve_exact(f: &BooleanFunction) -> Result<ExactAmplitudes> {
    dj_evolve_exact_with_cap(f, DEFAULT_SIM_CAP)
}

pub fn dj_evolve_exact_with_cap(f: &BooleanFunction, cap: usize) -> Result<ExactAmplitudes> {
    let n = f.n();
    check_cap(n, cap)?;
    f.record_quantum_query();
    let mut k: Vec<i64> = (0..1u64 << n)
        .map(|x| if f.table_bit(x) { -1 } else { 1 })
        .collect();
    for q in 0..n {
        let half = 1 << q;
        for block in k.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
    }
    Ok(ExactAmplitudes { n, numerators: k })
}

/// Outcome distribution of the final measurement; `p[z] = weights[z] / 2^(2n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementDistribution {
    n: usize,
    weights: Vec<u64>,
}

impl MeasurementDistribution {
    pub fn from_amplitudes(amps: &ExactAmplitudes) -> Self {
        MeasurementDistribution {
            n: amps.n,
            weights: amps
                .numerators
                .iter()
                .map(|&k| k.unsigned_abs().pow(2))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Numerators over [`denominator`](Self::denominator).
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, z: u64) -> u64 {
        self.weights[z as usize]
    }

    /// `2^(2n)`.
    pub fn denominator(&self) -> u64 {
        1 << (2 * self.n)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn probability(&self, z: u64) -> f64 {
        self.weight(z) as f64 / self.denominator() as f64
    }

    /// `p[z]` as a reduced fraction; zero is `(0, 1)`.
    pub fn probability_fraction(&self, z: u64) -> (u64, u64) {
        let num = self.weight(z);
        if num == 0 {
            return (0, 1);
        }
        let shift = num.trailing_zeros().min(2 * self.n as u32);
        (num >> shift, self.denominator() >> shift)
    }

    pub fn support(&self) -> Vec<u64> {
        (0..self.weights.len() as u64)
            .filter(|&z| self.weights[z as usize] != 0)
            .collect()
    }

    /// Text dump: `<z as x_n..x_1> <num>/<den> <decimal>` per outcome.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for z in 0..self.weights.len() as u64 {
            let (num, den) = self.probability_fraction(z);
            out.push_str(&format!(
                "{} {num}/{den} {}\n",
                mask_to_binary(z, self.n),
                self.probability(z)
            ));
        }
        out
    }

    pub fn sampler(&self) -> Sampler {
        let mut acc = 0u64;
        let cdf = self
            .weights
            .iter()
            .map(|&w| {
                acc += w;
                acc
            })
            .collect();
        Sampler { cdf, total: acc }
    }
}

pub fn dj_distribution(f: &BooleanFunction) -> Result<MeasurementDistribution> {
    Ok(MeasurementDistribution::from_amplitudes(&dj_evolve_exact(
        f,
    )?))
}

pub fn dj_distribution_with_cap(
    f: &BooleanFunction,
    cap: usize,
) -> Result<MeasurementDistribution> {
    Ok(MeasurementDistribution::from_amplitudes(
        &dj_evolve_exact_with_cap(f, cap)?,
    ))
}

/// Inverse-CDF sampler over the integer weights. Outcomes of weight zero
/// can never be drawn.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<u64>,
    total: u64,
}

impl Sampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let r = rng.random_range(0..self.total);
        self.cdf.partition_point(|&c| c <= r) as u64
    }
}

/// `count` independent measurement outcomes; reproducible per `seed`.
pub fn dj_sample(d: &MeasurementDistribution, seed: u64, count: usize) -> Vec<u64> {
    let sampler = d.sampler();
    let mut rng = rng::seeded(seed);
    (0..count).map(|_| sampler.sample(&mut rng)).collect()
}

/// One full run of the circuit: a single oracle application and a single
/// measurement.
pub fn measure_once<R: Rng + ?Sized>(f: &BooleanFunction, rng: &mut R) -> Result<u64> {
    let d = dj_distribution(f)?;
    Ok(d.sampler().sample(rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Constant,
    Balanced,
}

/// Deutsch-Jozsa decision. Exact when `f` is constant or balanced; for any
/// other `f` the answer is well-formed but carries no guarantee.
pub fn decide_constant_or_balanced(f: &BooleanFunction, seed: u64) -> Result<Verdict> {
    let z = measure_once(f, &mut rng::seeded(seed))?;
    Ok(if z == 0 {
        Verdict::Constant
    } else {
        Verdict::Balanced
    })
}

/// Recovers `omega` from the oracle of `x -> omega . x` with one run.
pub fn bv_recover_linear(f: &BooleanFunction, seed: u64) -> Result<u64> {
    measure_once(f, &mut rng::seeded(seed))
}

/// Returns some `omega` with `W_f(omega) != 0`, from one run.
pub fn solve_nonzero_walsh(f: &BooleanFunction, seed: u64) -> Result<u64> {
    solve_nonzero_walsh_with(f, &mut rng::seeded(seed))
}

pub fn solve_nonzero_walsh_with<R: Rng + ?Sized>(f: &BooleanFunction, rng: &mut R) -> Result<u64> {
    let omega = measure_once(f, rng)?;
    #[cfg(debug_assertions)]
    {
        let detached = BooleanFunction::from_raw(f.n(), f.words().to_vec());
        debug_assert_ne!(
            crate::spectral::walsh_spectrum(&detached).get(omega),
            0,
            "measured a point outside the Walsh support"
        );
    }
    Ok(omega)
}
