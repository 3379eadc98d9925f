//! Desk-scale simulator for quantum public-key encryption security games.
//!
//! The crate is organised in layers: [`qsim`] is the dense linear-algebra
//! substrate (states, unitaries, projective measurement, distance measures),
//! [`pke`] defines the scheme/adversary/oracle abstractions, [`schemes`]
//! provides two concrete schemes plus a negative control, [`games`] runs the
//! security experiments, [`reductions`] builds the constructive adversary
//! transformations, and [`analysis`] holds the statistical machinery and the
//! exact information-theoretic oracles used for cross-checks.

pub mod analysis;
pub mod games;
pub mod pke;
pub mod qsim;
pub mod reductions;
pub mod registry;
pub mod report;
pub mod schemes;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid unitary: {0}")]
    InvalidUnitary(String),
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("inconsistent measurement: all outcome probabilities vanish")]
    InconsistentMeasurement,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("oracle policy violation: {0}")]
    PolicyViolation(String),
    #[error("challenge overlap violation: query overlap {overlap:.3e} exceeds tolerance")]
    OverlapViolation { overlap: f64 },
    #[error("transform failed: {0}")]
    Transform(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
