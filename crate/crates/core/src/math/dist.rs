//! Finite probability distributions over integer-indexed outcomes.

use super::MathError;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Tiny negative values produced by floating-point PSD arithmetic are clamped
/// to zero; anything below this is a real error.
pub const NEGATIVE_CLAMP: f64 = -1e-12;

/// Allowed deviation of the total mass from 1.
pub const TOTAL_TOL: f64 = 1e-9;

/// A probability mass function over outcome indices.
///
/// Entries that clamp to exactly zero are dropped; absent keys read as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    probabilities: BTreeMap<u64, f64>,
}

impl OutcomeDistribution {
    /// Builds from a map, clamping values in `[-1e-12, 0)` to zero and
    /// checking the total is within `1e-9` of 1.
    pub fn new(probabilities: BTreeMap<u64, f64>) -> Result<Self, MathError> {
        let mut clean = BTreeMap::new();
        for (outcome, value) in probabilities {
            if value < NEGATIVE_CLAMP {
                return Err(MathError::NegativeProbability { outcome, value });
            }
            if value > 0.0 {
                clean.insert(outcome, value);
            }
        }
        let total: f64 = clean.values().sum();
        if (total - 1.0).abs() > TOTAL_TOL {
            return Err(MathError::NotADistribution { total });
        }
        Ok(OutcomeDistribution {
            probabilities: clean,
        })
    }

    /// Builds from a dense vector indexed by outcome.
    pub fn from_dense(probs: &[f64]) -> Result<Self, MathError> {
        let map = probs
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u64, p))
            .collect();
        Self::new(map)
    }

    /// Point mass on a single outcome.
    pub fn point_mass(outcome: u64) -> Self {
        let mut probabilities = BTreeMap::new();
        probabilities.insert(outcome, 1.0);
        OutcomeDistribution { probabilities }
    }

    /// Empirical distribution of a list of sampled outcomes.
    pub fn empirical(samples: &[u64]) -> Result<Self, MathError> {
        if samples.is_empty() {
            return Err(MathError::EmptyVector);
        }
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &s in samples {
            *counts.entry(s).or_insert(0) += 1;
        }
        let n = samples.len() as f64;
        let probabilities = counts
            .into_iter()
            .map(|(outcome, c)| (outcome, c as f64 / n))
            .collect();
        Ok(OutcomeDistribution { probabilities })
    }

    pub fn prob(&self, outcome: u64) -> f64 {
        self.probabilities.get(&outcome).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.probabilities.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }

    /// `Σ_i |a_i − b_i|` over the union of supports; always in `[0, 2]`
    /// (up to the normalization tolerance).
    pub fn l1_distance(&self, other: &OutcomeDistribution) -> f64 {
        let mut sum = 0.0;
        for (&k, &v) in &self.probabilities {
            sum += (v - other.prob(k)).abs();
        }
        for (&k, &v) in &other.probabilities {
            if !self.probabilities.contains_key(&k) {
                sum += v.abs();
            }
        }
        sum
    }

    /// Draws one outcome by inverse CDF over the (sorted) support.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        let mut last = 0;
        for (&outcome, &p) in &self.probabilities {
            acc += p;
            last = outcome;
            if u < acc {
                return outcome;
            }
        }
        last
    }

    /// Draws `shots` outcomes; cheaper than repeated [`sample`](Self::sample)
    /// because the CDF is built once.
    pub fn sample_many<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Vec<u64> {
        let mut cdf = Vec::with_capacity(self.probabilities.len());
        let mut acc = 0.0;
        for (&outcome, &p) in &self.probabilities {
            acc += p;
            cdf.push((acc, outcome));
        }
        let total = acc;
        (0..shots)
            .map(|_| {
                let u: f64 = rng.gen::<f64>() * total;
                match cdf.binary_search_by(|&(c, _)| c.partial_cmp(&u).unwrap()) {
                    Ok(i) => cdf[(i + 1).min(cdf.len() - 1)].1,
                    Err(i) => cdf[i.min(cdf.len() - 1)].1,
                }
            })
            .collect()
    }
}
