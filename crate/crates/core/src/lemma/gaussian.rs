//! Gaussian analogue of the correlated pair distribution and the sign map
//! connecting the two.
//!
//! A pair is drawn as `x, z` i.i.d. standard Gaussian vectors and
//! `y = η x + √(1 − η²) z`, so coordinates are standard Gaussian with
//! `E[x_i y_i] = η`. Taking signs coordinatewise produces a correlated sign
//! pair whose agreement parameter is `p = 1 − (2/π) arccos η`.

use super::LemmaError;
use crate::math::MathError;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianXiParams {
    pub len: usize,
    pub eta: f64,
}

impl GaussianXiParams {
    pub fn new(len: usize, eta: f64) -> Result<Self, LemmaError> {
        if len == 0 {
            return Err(LemmaError::Math(MathError::EmptyVector));
        }
        if !(-1.0..=1.0).contains(&eta) {
            return Err(LemmaError::Math(MathError::OutOfDomain {
                name: "eta",
                value: eta,
                min: -1.0,
                max: 1.0,
            }));
        }
        Ok(GaussianXiParams { len, eta })
    }
}

/// Draws one correlated Gaussian pair.
pub fn gaussian_xi_sample<R: Rng + ?Sized>(
    params: GaussianXiParams,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let tail = (1.0 - params.eta * params.eta).max(0.0).sqrt();
    let mut xs = Vec::with_capacity(params.len);
    let mut ys = Vec::with_capacity(params.len);
    for _ in 0..params.len {
        let x: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        xs.push(x);
        ys.push(params.eta * x + tail * z);
    }
    (xs, ys)
}

/// The sign-map correlation `p = 1 − (2/π) arccos η`.
pub fn sign_map(eta: f64) -> Result<f64, LemmaError> {
    if !(-1.0..=1.0).contains(&eta) {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "eta",
            value: eta,
            min: -1.0,
            max: 1.0,
        }));
    }
    Ok(1.0 - 2.0 / std::f64::consts::PI * eta.acos())
}

/// Signs of a real vector; zeros map to +1 (they occur with probability 0).
pub fn signs(v: &[f64]) -> Vec<i8> {
    v.iter().map(|&x| if x < 0.0 { -1 } else { 1 }).collect()
}
