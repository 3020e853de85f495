use thiserror::Error;

use crate::asymptotics::ProofFunctionWitness;

pub type Result<T> = std::result::Result<T, MeritError>;

#[derive(Debug, Error)]
pub enum MeritError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge on [{a}, {b}]: error estimate {estimate:e} above tolerance {tolerance:e}")]
    NonConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("structural identity `{identity}` failed for n = {n}: deviation {deviation:e} exceeds {tolerance:e}")]
    StructuralIdentity {
        identity: &'static str,
        n: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("bound violated for {}: observed {} against claimed {}", .0.function, .0.observed, .0.claimed)]
    BoundViolation(Box<ProofFunctionWitness>),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
