//! Distribution machinery and numerical verification checks.
//!
//! The protocols' analysis runs through a family of correlated sign-pair
//! distributions and a handful of exactly checkable identities and
//! inequalities about them. This module implements the distributions
//! ([`xi`], [`gaussian`]) and a check per claim: overlap laws, the padded
//! construction, the shift map, the skewed anticoncentration inequality over
//! large rectangles ([`skew`], with rectangle families in [`rects`]),
//! entropy-difference calculus ([`calculus`]), and the Haar overlap law,
//! projector tail bound and Rademacher-square approximation cost
//! ([`laws`]).
//!
//! Every check reports a [`verdict::CheckVerdict`] so sweeps can be logged
//! and plotted uniformly.

pub mod laws;
pub mod calculus;
pub mod gaussian;
pub mod rects;
pub mod skew;
pub mod verdict;
pub mod xi;

use crate::math::MathError;
use crate::protocol::ProtocolError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LemmaError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("padded construction needs even length, got {len}")]
    OddLength { len: usize },
}
