//! Seeded Monte Carlo harness for the one-shot Deutsch-Jozsa problems.
//!
//! Problem ids:
//!
//! | id | input functions | success criterion | guaranteed rate |
//! |----|-----------------|-------------------|-----------------|
//! | P1 | linear `w . x` | outcome equals `w` | 1 |
//! | P2 | any (random by default) | `W(z) != 0` | 1 |
//! | P3 | any (random by default) | `abs(W(z)) = max abs(W)` | none |
//! | P4 | plateaued (odd n) or bent (even n) | `abs(W(z)) = max abs(W)` | 1 |
//! | P5 | plateaued, spectrum `{0, +-2^((n+1)/2)}` | `abs(W(z)) = 2^((n+1)/2)` | 1 |
//! | P6 | `L_n`, within `2^(n-3)` of a linear function | as P3 | 9/16 |
//! | P7 | `L_{n,eps}`, within `floor(1.17 * 2^(n-3))` | as P3 | `(1 - 1.17/4)^2` |
//!
//! Trial `i` draws all of its randomness from ChaCha stream `i` of the run
//! seed, so results do not depend on scheduling. Each trial computes the
//! exact probability of success from the spectrum (a dyadic rational) in
//! addition to taking one sample; the exact values carry the bound checks,
//! the samples are the end-to-end check of the simulator.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::djsim::{dj_distribution, measure_once};
use crate::error::{Error, Result};
use crate::fngen::{self, NoisyLinearSpec};
use crate::rng::{stream_rng, Rng as ChaRng};
use crate::spectral::{walsh_spectrum, WalshSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::P1,
        Problem::P2,
        Problem::P3,
        Problem::P4,
        Problem::P5,
        Problem::P6,
        Problem::P7,
    ];

    /// Trial count used when none is given.
    pub fn default_trials(self) -> u64 {
        match self {
            Problem::P7 => 100_000,
            _ => 10_000,
        }
    }

    /// Problems whose every trial must succeed.
    pub fn is_exact(self) -> bool {
        matches!(self, Problem::P1 | Problem::P2 | Problem::P4 | Problem::P5)
    }

    pub fn check_n(self, n: usize) -> Result<()> {
        let odd_only = matches!(self, Problem::P5 | Problem::P6 | Problem::P7);
        if odd_only && (n.is_multiple_of(2) || n < 3) {
            return Err(Error::value(format!(
                "{self} is defined for odd n >= 3 only, got n = {n}"
            )));
        }
        if n == 0 || n > crate::djsim::DEFAULT_SIM_CAP {
            return Err(Error::Capacity {
                n,
                cap: crate::djsim::DEFAULT_SIM_CAP,
            });
        }
        if self == Problem::P4 && n < 2 {
            return Err(Error::value("P4 needs n >= 2"));
        }
        Ok(())
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", *self as u8 + 1)
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let idx = s
            .strip_prefix(['P', 'p'])
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|d| (1..=7).contains(d))
            .ok_or_else(|| Error::value(format!("unknown problem '{s}', expected P1..P7")))?;
        Ok(Problem::ALL[idx - 1])
    }
}

impl Serialize for Problem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Where the per-trial functions come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSource {
    Random,
    /// Two-bent concatenation; odd `n`.
    Plateaued,
    /// Maiorana-McFarland; even `n`.
    Bent,
    /// Constant zero or one, chosen per trial.
    Constant,
    /// `w . x` with `w = trial mod 2^n`.
    Linear,
    /// The same function in every trial.
    Fixed(BooleanFunction),
}

impl FunctionSource {
    fn draw(&self, n: usize, trial: u64, rng: &mut ChaRng) -> Result<BooleanFunction> {
        match self {
            FunctionSource::Random => fngen::random_function_with(n, rng),
            FunctionSource::Plateaued => fngen::random_plateaued(n, rng),
            FunctionSource::Bent => fngen::random_bent_mm(n, rng),
            FunctionSource::Constant => fngen::affine(n, 0, rng.random_bool(0.5)),
            FunctionSource::Linear => fngen::linear(n, trial % (1 << n)),
            FunctionSource::Fixed(f) => {
                if f.n() != n {
                    return Err(Error::dimension(n, f.n()));
                }
                BooleanFunction::from_words(n, f.words().to_vec())
            }
        }
    }
}

/// Exact lower bound as a fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub num: u128,
    pub den: u128,
}

impl Bound {
    pub const ONE: Bound = Bound { num: 1, den: 1 };
    /// `((2^n - 2^(n-2)) / 2^n)^2`.
    pub const NINE_SIXTEENTHS: Bound = Bound { num: 9, den: 16 };
    /// `(1 - 1.17/4)^2 = (283/400)^2`.
    pub const LN_EPS: Bound = Bound {
        num: 283 * 283,
        den: 400 * 400,
    };

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Whether `weight / 2^(2n) >= self`.
    pub fn admits(self, weight: u128, n: usize) -> bool {
        weight * self.den >= self.num << (2 * n)
    }
}

/// One row of the per-trial CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Table entries flipped away from the base linear function (P6, P7).
    pub e: Option<u64>,
    #[serde(rename = "max_abs_W")]
    pub max_abs_w: u64,
    pub success: bool,
    #[serde(skip)]
    pub outcome: u64,
    /// Numerator of the exact success probability over `2^(2n)`.
    #[serde(skip)]
    pub success_weight: u128,
    #[serde(skip)]
    pub queries_classical: u64,
    #[serde(skip)]
    pub queries_quantum: u64,
}

/// Summary of a run. Serialises to the report JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub problem: Problem,
    pub n: usize,
    pub trials: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    /// Smallest per-trial exact success probability.
    pub exact_rate_min: f64,
    pub paper_bound: Option<f64>,
    pub seed: u64,
    pub queries_classical: u64,
    pub queries_quantum: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub report: ExperimentReport,
    pub rows: Vec<TrialRecord>,
}

impl Experiment {
    pub fn exact_probabilities(&self) -> Vec<f64> {
        let den = (1u128 << (2 * self.report.n)) as f64;
        self.rows
            .iter()
            .map(|r| r.success_weight as f64 / den)
            .collect()
    }

    pub fn exact_rate_mean(&self) -> f64 {
        let p = self.exact_probabilities();
        p.iter().sum::<f64>() / p.len() as f64
    }

    /// Standard deviation of the empirical rate, `sqrt(sum p(1-p)) / trials`,
    /// from the per-trial exact probabilities.
    pub fn empirical_sigma(&self) -> f64 {
        let p = self.exact_probabilities();
        p.iter().map(|p| p * (1.0 - p)).sum::<f64>().sqrt() / p.len() as f64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("report serialises") + "\n"
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::value(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::value(e.to_string()))?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

/// What a single trial needs to know about the function it measured.
struct Measured {
    spectrum: WalshSpectrum,
    outcome: u64,
    queries_classical: u64,
    queries_quantum: u64,
}

/// The classical reference (full spectrum) and one circuit run.
fn measure(f: &BooleanFunction, rng: &mut ChaRng) -> Result<Measured> {
    let spectrum = walsh_spectrum(f);
    debug_assert!(spectrum.satisfies_parseval());
    let outcome = measure_once(f, rng)?;
    Ok(Measured {
        spectrum,
        outcome,
        queries_classical: f.query_count(),
        queries_quantum: f.quantum_query_count(),
    })
}

fn squared(v: i64) -> u128 {
    let a = v.unsigned_abs() as u128;
    a * a
}

/// Weight of the outcomes attaining `max |W|`.
fn max_weight(s: &WalshSpectrum) -> u128 {
    let max = s.max_abs();
    s.values()
        .iter()
        .filter(|v| v.unsigned_abs() == max)
        .map(|&v| squared(v))
        .sum()
}

fn run_trials<F>(trials: u64, seed: u64, trial: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(u64, &mut ChaRng) -> Result<TrialRecord> + Sync,
{
    if trials == 0 {
        return Err(Error::value("trials must be at least 1"));
    }
    let results: Vec<Result<TrialRecord>> = (0..trials)
        .into_par_iter()
        .map(|t| trial(t, &mut stream_rng(seed, t)))
        .collect();
    results.into_iter().collect()
}

fn summarise(
    problem: Problem,
    n: usize,
    seed: u64,
    bound: Option<Bound>,
    rows: Vec<TrialRecord>,
) -> Result<Experiment> {
    let trials = rows.len() as u64;
    let successes = rows.iter().filter(|r| r.success).count() as u64;
    let min_weight = rows.iter().map(|r| r.success_weight).min().unwrap_or(0);
    if let Some(b) = bound {
        if let Some(row) = rows.iter().find(|r| !b.admits(r.success_weight, n)) {
            return Err(Error::Invariant(format!(
                "{problem} trial {}: exact success probability {}/2^{} is below the bound {}/{}",
                row.trial,
                row.success_weight,
                2 * n,
                b.num,
                b.den
            )));
        }
    }
    let report = ExperimentReport {
        problem,
        n,
        trials,
        successes,
        empirical_rate: successes as f64 / trials as f64,
        exact_rate_min: min_weight as f64 / (1u128 << (2 * n)) as f64,
        paper_bound: bound.map(Bound::value),
        seed,
        queries_classical: rows.iter().map(|r| r.queries_classical).sum(),
        queries_quantum: rows.iter().map(|r| r.queries_quantum).sum(),
    };
    Ok(Experiment { report, rows })
}

fn record(
    trial: u64,
    e: Option<u64>,
    m: &Measured,
    success: bool,
    success_weight: u128,
) -> TrialRecord {
    TrialRecord {
        trial,
        e,
        max_abs_w: m.spectrum.max_abs(),
        success,
        outcome: m.outcome,
        success_weight,
        queries_classical: m.queries_classical,
        queries_quantum: m.queries_quantum,
    }
}

/// P1: recover `w` from one run on `w . x`, with `w` cycling through all
/// masks as the trial index grows.
pub fn run_p1(n: usize, trials: u64, seed: u64) -> Result<Experiment> {
    Problem::P1.check_n(n)?;
    let rows = run_trials(trials, seed, |t, rng| {
        let omega = t % (1 << n);
        let f = fngen::linear(n, omega)?;
        let m = measure(&f, rng)?;
        if m.outcome != omega {
            return Err(Error::Invariant(format!(
                "P1 trial {t}: measured {:#b} for linear mask {omega:#b}",
                m.outcome
            )));
        }
        let w = squared(m.spectrum.get(omega));
        Ok(record(t, None, &m, true, w))
    })?;
    summarise(Problem::P1, n, seed, Some(Bound::ONE), rows)
}

/// P2 (and P5 for plateaued sources): one run returns a point of the Walsh
/// support. Any miss is reported as [`Error::Invariant`].
pub fn run_p2(n: usize, source: &FunctionSource, trials: u64, seed: u64) -> Result<Experiment> {
    let problem = if *source == FunctionSource::Plateaued {
        Problem::P5
    } else {
        Problem::P2
    };
    problem.check_n(n)?;
    let plateau = 1u64 << n.div_ceil(2);
    let rows = run_trials(trials, seed, |t, rng| {
        let f = source.draw(n, t, rng)?;
        let m = measure(&f, rng)?;
        let w = m.spectrum.get(m.outcome);
        if w == 0 {
            return Err(Error::Invariant(format!(
                "{problem} trial {t}: measured {:#b} outside the Walsh support",
                m.outcome
            )));
        }
        if problem == Problem::P5 && w.unsigned_abs() != plateau {
            return Err(Error::Invariant(format!(
                "P5 trial {t}: |W({:#b})| = {} instead of {plateau}",
                m.outcome,
                w.unsigned_abs()
            )));
        }
        let support: u128 = m.spectrum.values().iter().map(|&v| squared(v)).sum();
        Ok(record(t, None, &m, true, support))
    })?;
    summarise(problem, n, seed, Some(Bound::ONE), rows)
}

pub fn run_p5(n: usize, trials: u64, seed: u64) -> Result<Experiment> {
    run_p2(n, &FunctionSource::Plateaued, trials, seed)
}

/// P3/P4: one run hits a point of maximal `|W|`. For P4 (plateaued or bent
/// inputs) every trial must succeed; for P3 the rate is compared with the
/// per-trial exact probabilities by the caller.
pub fn run_p3_p4(
    problem: Problem,
    n: usize,
    source: &FunctionSource,
    trials: u64,
    seed: u64,
) -> Result<Experiment> {
    if !matches!(problem, Problem::P3 | Problem::P4) {
        return Err(Error::value(format!("{problem} is not P3 or P4")));
    }
    problem.check_n(n)?;
    let rows = run_trials(trials, seed, |t, rng| {
        let f = source.draw(n, t, rng)?;
        let m = measure(&f, rng)?;
        let success = m.spectrum.get(m.outcome).unsigned_abs() == m.spectrum.max_abs();
        if problem == Problem::P4 && !success {
            return Err(Error::Invariant(format!(
                "P4 trial {t}: measured {:#b}, not a maximal Walsh point",
                m.outcome
            )));
        }
        Ok(record(t, None, &m, success, max_weight(&m.spectrum)))
    })?;
    let bound = (problem == Problem::P4).then_some(Bound::ONE);
    summarise(problem, n, seed, bound, rows)
}

/// Default source for P4: plateaued for odd `n`, bent for even `n`.
pub fn p4_source(n: usize) -> FunctionSource {
    if n % 2 == 1 {
        FunctionSource::Plateaued
    } else {
        FunctionSource::Bent
    }
}

fn run_noisy(
    problem: Problem,
    n: usize,
    trials: u64,
    seed: u64,
    worst_case: bool,
) -> Result<Experiment> {
    problem.check_n(n)?;
    let bound = if problem == Problem::P6 {
        Bound::NINE_SIXTEENTHS
    } else {
        Bound::LN_EPS
    };
    let rows = run_trials(trials, seed, |t, rng| {
        let base = rng.random_range(0..1u64 << n);
        let spec = if problem == Problem::P6 {
            NoisyLinearSpec::ln(n, base)?
        } else {
            NoisyLinearSpec::ln_eps(n, base)?
        };
        let draw = fngen::noisy_linear_with(&spec, rng, worst_case)?;
        let m = measure(&draw.function, rng)?;
        let success = m.spectrum.get(m.outcome).unsigned_abs() == m.spectrum.max_abs();
        Ok(record(
            t,
            Some(draw.flips),
            &m,
            success,
            max_weight(&m.spectrum),
        ))
    })?;
    summarise(problem, n, seed, Some(bound), rows)
}

/// P6 over `L_n`. `worst_case` flips exactly `2^(n-3)` entries per trial.
pub fn run_p6(n: usize, trials: u64, seed: u64, worst_case: bool) -> Result<Experiment> {
    run_noisy(Problem::P6, n, trials, seed, worst_case)
}

/// P7 over `L_{n,eps}` with budget `floor(1.17 * 2^(n-3))`.
pub fn run_p7(n: usize, trials: u64, seed: u64, worst_case: bool) -> Result<Experiment> {
    run_noisy(Problem::P7, n, trials, seed, worst_case)
}

/// Full description of a run, as the CLI builds it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub worst_case: bool,
}

pub fn run(config: &ExperimentConfig) -> Result<Experiment> {
    let ExperimentConfig {
        problem,
        n,
        trials,
        seed,
        worst_case,
    } = *config;
    match problem {
        Problem::P1 => run_p1(n, trials, seed),
        Problem::P2 => run_p2(n, &FunctionSource::Random, trials, seed),
        Problem::P3 => run_p3_p4(problem, n, &FunctionSource::Random, trials, seed),
        Problem::P4 => run_p3_p4(problem, n, &p4_source(n), trials, seed),
        Problem::P5 => run_p5(n, trials, seed),
        Problem::P6 => run_p6(n, trials, seed, worst_case),
        Problem::P7 => run_p7(n, trials, seed, worst_case),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryMethod {
    /// Read the whole table, then transform.
    ClassicalFwt,
    /// One circuit run.
    DjSingleShot,
}

/// Oracle queries one method spends on `f`, measured on a fresh copy so the
/// caller's counters are untouched.
pub fn query_audit(f: &BooleanFunction, method: QueryMethod) -> Result<u64> {
    let copy = BooleanFunction::from_words(f.n(), f.words().to_vec())?;
    match method {
        QueryMethod::ClassicalFwt => {
            walsh_spectrum(&copy);
            Ok(copy.query_count())
        }
        QueryMethod::DjSingleShot => {
            dj_distribution(&copy)?;
            Ok(copy.quantum_query_count())
        }
    }
}

/// Counts `L_n` without the closed formula: every function for `n = 3`,
/// the union of distance balls for `n = 4`. Fails if two balls overlap.
pub fn enumerate_ln(n: usize) -> Result<BigUint> {
    match n {
        3 => enumerate_exhaustive_n3(),
        4 => enumerate_balls(4),
        _ => Err(Error::Capacity { n, cap: 4 }),
    }
}

fn linear_table(n: usize, omega: u64) -> u64 {
    (0..1u64 << n)
        .filter(|x| (x & omega).count_ones() % 2 == 1)
        .fold(0, |acc, x| acc | 1 << x)
}

fn enumerate_exhaustive_n3() -> Result<BigUint> {
    let lin: Vec<u64> = (0..8).map(|w| linear_table(3, w)).collect();
    let mut count = 0u64;
    for t in 0u64..256 {
        let near = lin.iter().filter(|&&l| (t ^ l).count_ones() <= 1).count();
        if near > 1 {
            return Err(Error::Invariant(format!(
                "table {t:#04x} lies in {near} balls"
            )));
        }
        count += near as u64;
    }
    Ok(BigUint::from(count))
}

fn enumerate_balls(n: usize) -> Result<BigUint> {
    let len = 1u32 << n;
    let radius = 1u32 << (n - 3);
    let mut seen = std::collections::HashSet::new();
    for omega in 0..1u64 << n {
        let center = linear_table(n, omega);
        // All flip masks of weight <= radius.
        let mut stack = vec![(0u64, 0u32, 0u32)];
        while let Some((mask, next, used)) = stack.pop() {
            if !seen.insert(center ^ mask) {
                return Err(Error::Invariant(format!(
                    "table {:#x} reached from two centres",
                    center ^ mask
                )));
            }
            if used < radius {
                for pos in next..len {
                    stack.push((mask | 1 << pos, pos + 1, used + 1));
                }
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_parsing() {
        assert_eq!("P6".parse::<Problem>().unwrap(), Problem::P6);
        assert_eq!("p1".parse::<Problem>().unwrap(), Problem::P1);
        assert!("P8".parse::<Problem>().is_err());
        assert!("6".parse::<Problem>().is_err());
        assert_eq!(Problem::P7.to_string(), "P7");
    }

    #[test]
    fn odd_n_is_required() {
        assert!(run_p6(8, 10, 0, true).is_err());
        assert!(run_p7(4, 10, 0, true).is_err());
        assert!(run_p5(6, 10, 0).is_err());
        assert!(run_p6(1, 10, 0, true).is_err());
    }

    #[test]
    fn p1_recovers_every_mask() {
        let e = run_p1(6, 64, 3).unwrap();
        assert_eq!(e.report.successes, 64);
        assert_eq!(e.report.queries_quantum, 64);
        assert_eq!(e.report.queries_classical, 64 * 64);
        assert_eq!(e.report.exact_rate_min, 1.0);
    }

    #[test]
    fn p2_constant_source() {
        let e = run_p2(5, &FunctionSource::Constant, 50, 8).unwrap();
        assert_eq!(e.report.successes, 50);
        assert!(e.rows.iter().all(|r| r.outcome == 0 && r.max_abs_w == 32));
    }

    #[test]
    fn p5_hits_the_plateau() {
        let e = run_p5(7, 200, 1).unwrap();
        assert_eq!(e.report.problem, Problem::P5);
        assert_eq!(e.report.successes, 200);
        assert!(e.rows.iter().all(|r| r.max_abs_w == 16));
    }

    #[test]
    fn p4_bent_and_plateaued() {
        for n in [6, 7] {
            let e = run_p3_p4(Problem::P4, n, &p4_source(n), 100, 2).unwrap();
            assert_eq!(e.report.successes, 100);
            assert_eq!(e.report.exact_rate_min, 1.0);
        }
    }

    #[test]
    fn p6_unperturbed_always_succeeds() {
        let n = 5;
        let rows = run_trials(100, 4, |t, rng| {
            let spec = NoisyLinearSpec::custom(n, t % 32, 0)?;
            let d = fngen::noisy_linear_with(&spec, rng, true)?;
            let m = measure(&d.function, rng)?;
            let ok = m.spectrum.get(m.outcome).unsigned_abs() == m.spectrum.max_abs();
            Ok(record(t, Some(d.flips), &m, ok, max_weight(&m.spectrum)))
        })
        .unwrap();
        let e = summarise(Problem::P6, n, 4, Some(Bound::NINE_SIXTEENTHS), rows).unwrap();
        assert_eq!(e.report.empirical_rate, 1.0);
    }

    #[test]
    fn p6_worst_case_sits_on_the_bound() {
        let e = run_p6(7, 300, 5, true).unwrap();
        assert!(e.rows.iter().all(|r| r.e == Some(16)));
        // W(base) = 128 - 32 is the unique maximum, so p = (96/128)^2.
        assert_eq!(e.report.exact_rate_min, 0.5625);
        assert_eq!(e.report.paper_bound, Some(0.5625));
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(Bound::LN_EPS.value(), 0.500_556_25);
        assert!(Bound::NINE_SIXTEENTHS.admits(9 << 12, 8));
        assert!(!Bound::NINE_SIXTEENTHS.admits((9 << 12) - 1, 8));
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = ExperimentConfig {
            problem: Problem::P3,
            n: 6,
            trials: 200,
            seed: 77,
            worst_case: false,
        };
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn csv_layout() {
        let e = run_p6(5, 3, 1, true).unwrap();
        let csv = e.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("trial,e,max_abs_W,success"));
        assert_eq!(lines.count(), 3);
        let json = e.to_json();
        let keys: Vec<&str> = json
            .lines()
            .filter_map(|l| l.trim().strip_prefix('"'))
            .filter_map(|l| l.split('"').next())
            .collect();
        assert_eq!(
            keys,
            [
                "problem",
                "n",
                "trials",
                "successes",
                "empirical_rate",
                "exact_rate_min",
                "paper_bound",
                "seed",
                "queries_classical",
                "queries_quantum"
            ]
        );
    }

    #[test]
    fn query_audit_examples() {
        let f = fngen::random_function(10, 1).unwrap();
        assert_eq!(query_audit(&f, QueryMethod::ClassicalFwt).unwrap(), 1024);
        assert_eq!(query_audit(&f, QueryMethod::DjSingleShot).unwrap(), 1);
        assert_eq!(f.query_count(), 0);
        let g = BooleanFunction::zero(4).unwrap();
        for _ in 0..5 {
            dj_distribution(&g).unwrap();
        }
        assert_eq!(g.quantum_query_count(), 5);
    }

    #[test]
    fn enumeration_matches_formula() {
        assert_eq!(enumerate_ln(3).unwrap(), BigUint::from(72u32));
        assert_eq!(enumerate_ln(4).unwrap(), BigUint::from(2192u32));
        assert!(matches!(enumerate_ln(5), Err(Error::Capacity { .. })));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_p1(3, 0, 0).is_err());
    }
}
