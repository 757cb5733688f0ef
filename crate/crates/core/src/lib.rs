//! Walsh spectra, Deutsch-Jozsa simulation and Monte Carlo experiments for
//! single-output Boolean functions.
//!
//! The crate is split along the lines of the data flowing through it:
//!
//! - [`boolfn`]: bit-packed truth tables with oracle query accounting, the
//!   algebraic normal form and the `.tt` text format.
//! - [`spectral`]: the in-place fast Walsh transform and everything derived
//!   from a spectrum (nonlinearity, resiliency, plateau class, best linear
//!   approximation).
//! - [`djsim`]: state-vector simulation of the Deutsch-Jozsa circuit and the
//!   one-shot solvers built on a single measurement.
//! - [`fngen`]: generators for linear, random, bent, plateaued and
//!   noisy-linear functions plus the counting formula for the noisy class.
//! - [`lab`]: seeded experiment harness producing JSON/CSV reports.

#![forbid(unsafe_code)]

pub mod boolfn;
pub mod djsim;
mod error;
pub mod fngen;
pub mod lab;
pub mod rng;
pub mod spectral;

pub use boolfn::{AnfPolynomial, BooleanFunction, DEFAULT_N_MAX, MAX_VARIABLES};
pub use djsim::{DjState, MeasurementDistribution, Verdict};
pub use error::{Error, Result};
pub use fngen::{NoisyLinearSpec, NoisyVariant};
pub use lab::{ExperimentReport, Problem};
pub use spectral::{SpectrumClass, WalshSpectrum};
