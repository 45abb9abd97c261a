//! Uniform verdict records for verification checks.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One checked claim instance: what was compared, at which parameters, and
/// whether the claim held. Serializes to a single JSON object suitable for
/// appending to a results file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    /// Monte Carlo sample count; zero for exact evaluations.
    pub samples: u64,
    pub seed: u64,
}

impl CheckVerdict {
    pub fn exact(check: &str, lhs: f64, rhs: f64, holds: bool) -> Self {
        CheckVerdict {
            check: check.to_string(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            margin: lhs - rhs,
            holds,
            samples: 0,
            seed: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_sampling(mut self, samples: u64, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdict serialization")
    }
}
