//! Two-party communication protocols with bit-exact accounting.
//!
//! Deterministic protocols are binary trees whose internal nodes name a
//! speaker and a message function of that speaker's input; every leaf is an
//! accept/reject decision. Replaying a tree on an input pair partitions the
//! input product space into one rectangle per leaf, which is what the
//! acceptance-accounting identity for randomized protocols is computed from.
//!
//! Message order conventions for the concrete protocols built on this
//! framework (state codec, shared-codebook index): Alice speaks first, one
//! message each; an index message over `K` alternatives is charged
//! `⌈log2 K⌉` bits and its bits appear literally in the transcript.

pub mod randomized;
pub mod rectangle;
pub mod run;
pub mod tree;

use crate::math::MathError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("input domain of size {size} exceeds capacity {max}")]
    DomainTooLarge { size: u64, max: u64 },
    #[error("message table has {actual} entries, speaker domain has {expected}")]
    TableSize { expected: usize, actual: usize },
    #[error("tree depth {actual} exceeds the declared bound {declared}")]
    DepthExceeded { declared: usize, actual: usize },
    #[error("protocol weights sum to {total}, not within 1e-12 of 1")]
    BadWeights { total: f64 },
    #[error("support trees disagree on depth bound or domain")]
    MixedSupport,
    #[error("joint distribution sums to {total}, not within 1e-9 of 1")]
    UnnormalizedJoint { total: f64 },
    #[error("joint distribution entry {value} is negative")]
    NegativeJoint { value: f64 },
    #[error("exact mode needs explicit bitset sides")]
    NeedsExplicitSides,
    #[error("monte carlo mode needs at least one sample")]
    NoSamples,
    #[error(transparent)]
    Math(#[from] MathError),
}
