//! Classical protocols with bit-exact communication accounting.
//!
//! * [`gridnet`] — one-way state transmission by amplitude-grid quantization:
//!   Alice sends a fixed-width encoding of her state, Bob measures the
//!   decoded state.
//! * [`raz`] — the shared-codebook protocol for the vector-in-subspace
//!   promise problem: a single index message into a jointly sampled Haar
//!   codebook.
//! * [`sampler`] — the sampled-positions tester for gap orthogonality:
//!   accept when every probed coordinate pair agrees, or every one disagrees.
//! * [`query`] — adapter charging 2 bits per oracle query to turn any query
//!   algorithm over the product table into a two-party protocol.
//! * [`reduce`] — double-output to single-output reduction at a cost of `n`
//!   extra bits.

pub mod gridnet;
pub mod query;
pub mod raz;
pub mod reduce;
pub mod sampler;

use crate::math::MathError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error("codec is for dimension {expected}, instance has {actual}")]
    CodecDimension { expected: usize, actual: usize },
    #[error("state must be phase-canonical before encoding")]
    NotCanonical,
    #[error("amplitude component {value} outside [-1, 1]")]
    ComponentRange { value: f64 },
    #[error("encoded payload has {actual} bits, codec expects {expected}")]
    PayloadLength { expected: u64, actual: u64 },
    #[error("decoded vector is identically zero")]
    ZeroDecode,
    #[error("codebook must have at least one state")]
    EmptyCodebook,
    #[error("instance violates the promise: overlap {overlap} for label {label}")]
    BadPromise { overlap: f64, label: &'static str },
    #[error("protocol needs a half-rank instance: rank {rank} in dimension {dim}")]
    NotHalfRank { rank: usize, dim: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}
