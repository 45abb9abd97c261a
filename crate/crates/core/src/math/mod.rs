//! Foundational numerics shared by every protocol and check: ±1 vectors,
//! statevectors, measurements, finite outcome distributions, the
//! Walsh–Hadamard transform, Haar sampling, and scalar analytic helpers.

pub mod dist;
pub mod haar;
pub mod measurement;
pub mod sign;
pub mod special;
pub mod state;
pub mod wht;

use thiserror::Error;

/// Errors raised by the numeric foundations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("sign vector entry at index {index} is {value}, expected +1 or -1")]
    InvalidSign { index: usize, value: i8 },
    #[error("vector must be non-empty")]
    EmptyVector,
    #[error("length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("state norm is {norm}, more than {tol} away from 1")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("probability {value} at outcome {outcome} is below the clamp threshold")]
    NegativeProbability { outcome: u64, value: f64 },
    #[error("distribution total is {total}, not within 1e-9 of 1")]
    NotADistribution { total: f64 },
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("{name} = {value} outside domain [{min}, {max}]")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("capacity exceeded: {what}")]
    Capacity { what: String },
}
