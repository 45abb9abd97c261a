//! Rectangles (product subsets of the two input spaces) and their measure
//! under correlated sign-pair distributions.
//!
//! A rectangle side is either an explicit membership bitset over an
//! enumerated domain or an opaque predicate on sign vectors. Exact measures
//! need bitsets; predicates support Monte Carlo estimation at lengths where
//! enumeration is hopeless.

use super::ProtocolError;
use crate::math::sign::{correlated_pair, SignVector};
use crate::math::wht::xor_convolve;
use crate::math::MathError;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// Longest string for which exact (bitset) measures are supported; keeps the
/// pair enumeration at or below 2^24.
pub const MAX_EXACT_LEN: usize = 12;

#[derive(Clone)]
pub enum Side {
    /// Membership flags over an enumerated domain (`flags[i]` = index `i` is
    /// in the set). Over `{±1}^n` the index convention is the bit pattern of
    /// the sign vector.
    Bits(Vec<bool>),
    /// Membership predicate over sign vectors.
    Predicate(Arc<dyn Fn(&SignVector) -> bool + Send + Sync>),
}

impl Side {
    pub fn bits(flags: Vec<bool>) -> Self {
        Side::Bits(flags)
    }

    pub fn predicate(f: impl Fn(&SignVector) -> bool + Send + Sync + 'static) -> Self {
        Side::Predicate(Arc::new(f))
    }

    /// Full domain of the given size.
    pub fn full(size: usize) -> Self {
        Side::Bits(vec![true; size])
    }

    pub fn contains_index(&self, i: usize) -> bool {
        match self {
            Side::Bits(flags) => flags.get(i).copied().unwrap_or(false),
            Side::Predicate(_) => panic!("predicate side has no index membership"),
        }
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        match self {
            Side::Bits(flags) => flags.get(v.to_index() as usize).copied().unwrap_or(false),
            Side::Predicate(f) => f(v),
        }
    }

    /// Member count; only available for bitset sides.
    pub fn count(&self) -> usize {
        match self {
            Side::Bits(flags) => flags.iter().filter(|&&b| b).count(),
            Side::Predicate(_) => panic!("predicate side has no member count"),
        }
    }

    pub fn member_indices(&self) -> Vec<usize> {
        match self {
            Side::Bits(flags) => flags
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect(),
            Side::Predicate(_) => panic!("predicate side has no member list"),
        }
    }

}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Bits(flags) => {
                let members = flags.iter().filter(|&&b| b).count();
                write!(f, "Side::Bits({members} of {})", flags.len())
            }
            Side::Predicate(_) => write!(f, "Side::Predicate"),
        }
    }
}

/// A product set `A × B`.
#[derive(Debug, Clone)]
pub struct Rectangle {
    a: Side,
    b: Side,
}

impl Rectangle {
    pub fn new(a: Side, b: Side) -> Self {
        Rectangle { a, b }
    }

    /// The full space over a domain of `size` indices on each side.
    pub fn full(size: usize) -> Self {
        Rectangle {
            a: Side::full(size),
            b: Side::full(size),
        }
    }

    pub fn a(&self) -> &Side {
        &self.a
    }

    pub fn b(&self) -> &Side {
        &self.b
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.a.contains_index(x) && self.b.contains_index(y)
    }
}

/// A measure value with its Monte Carlo standard error (zero in exact mode).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// How to evaluate a rectangle measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureMode {
    Exact,
    MonteCarlo { samples: u64 },
}

/// Per-pair weight of the correlated distribution at Hamming distance `d`:
/// `2^{-n} ((1+p)/2)^{n-d} ((1-p)/2)^d`.
fn distance_weights(len: usize, p: f64) -> Vec<f64> {
    let agree = (1.0 + p) / 2.0;
    let disagree = (1.0 - p) / 2.0;
    let base = 0.5f64.powi(len as i32);
    (0..=len)
        .map(|d| base * agree.powi((len - d) as i32) * disagree.powi(d as i32))
        .collect()
}

/// `counts[d]` = number of pairs `(x, y) ∈ A × B` at Hamming distance `d`,
/// computed exactly with an XOR convolution of the two indicator vectors.
/// All intermediate values are integers below 2^53, so the result is exact.
pub fn distance_counts(rect: &Rectangle, len: usize) -> Result<Vec<f64>, ProtocolError> {
    let (Side::Bits(a), Side::Bits(b)) = (&rect.a, &rect.b) else {
        return Err(ProtocolError::NeedsExplicitSides);
    };
    if len > MAX_EXACT_LEN {
        return Err(ProtocolError::DomainTooLarge {
            size: 1u64 << len,
            max: 1u64 << MAX_EXACT_LEN,
        });
    }
    let size = 1usize << len;
    if a.len() != size || b.len() != size {
        return Err(ProtocolError::Math(MathError::DimensionMismatch {
            expected: size,
            actual: a.len(),
        }));
    }
    let fa: Vec<f64> = a.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
    let fb: Vec<f64> = b.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
    let conv = xor_convolve(&fa, &fb)?;
    let mut counts = vec![0.0; len + 1];
    for (z, &c) in conv.iter().enumerate() {
        counts[z.count_ones() as usize] += c;
    }
    Ok(counts)
}

/// Pair-by-pair enumeration of the same distance counts; quadratic in the
/// member counts. Retained as the independent route for testing the
/// convolution path.
pub fn distance_counts_enumerated(rect: &Rectangle, len: usize) -> Result<Vec<f64>, ProtocolError> {
    let (Side::Bits(a), Side::Bits(b)) = (&rect.a, &rect.b) else {
        return Err(ProtocolError::NeedsExplicitSides);
    };
    let members_a: Vec<usize> = a
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i)
        .collect();
    let members_b: Vec<usize> = b
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i)
        .collect();
    let pairs = members_a.len() as u64 * members_b.len() as u64;
    if pairs > 1 << 24 {
        return Err(ProtocolError::DomainTooLarge {
            size: pairs,
            max: 1 << 24,
        });
    }
    let mut counts = vec![0.0; len + 1];
    for &x in &members_a {
        for &y in &members_b {
            counts[(x ^ y).count_ones() as usize] += 1.0;
        }
    }
    Ok(counts)
}

/// Measure of a rectangle under the correlated sign-pair distribution with
/// per-coordinate agreement probability `(1 + p) / 2`.
///
/// Exact mode sums the per-pair weights grouped by Hamming distance; Monte
/// Carlo mode samples pairs and reports the binomial standard error of the
/// hit frequency.
pub fn rect_measure<R: Rng + ?Sized>(
    rect: &Rectangle,
    len: usize,
    p: f64,
    mode: MeasureMode,
    rng: &mut R,
) -> Result<MeasureEstimate, ProtocolError> {
    if !(-1.0..=1.0).contains(&p) {
        return Err(ProtocolError::Math(MathError::OutOfDomain {
            name: "p",
            value: p,
            min: -1.0,
            max: 1.0,
        }));
    }
    match mode {
        MeasureMode::Exact => {
            let counts = distance_counts(rect, len)?;
            let weights = distance_weights(len, p);
            let value = counts.iter().zip(&weights).map(|(c, w)| c * w).sum();
            Ok(MeasureEstimate {
                value,
                std_error: 0.0,
            })
        }
        MeasureMode::MonteCarlo { samples } => {
            if samples == 0 {
                return Err(ProtocolError::NoSamples);
            }
            let mut hits = 0u64;
            for _ in 0..samples {
                let (x, y) = correlated_pair(len, p, rng)?;
                if rect.a.contains(&x) && rect.b.contains(&y) {
                    hits += 1;
                }
            }
            let value = hits as f64 / samples as f64;
            let std_error = (value * (1.0 - value) / samples as f64).sqrt();
            Ok(MeasureEstimate { value, std_error })
        }
    }
}
