//! Pure quantum states as dense complex amplitude vectors.

use super::MathError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Tolerance on `| ‖ψ‖₂ − 1 |` at construction.
pub const NORM_TOL: f64 = 1e-10;

/// Statevector paths are desk-scale; refuse dimensions past 2^10.
pub const MAX_DIM: usize = 1 << 10;

/// A unit vector in `C^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates unit norm (within `1e-10`) and the dimension cap.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, MathError> {
        if amplitudes.is_empty() {
            return Err(MathError::EmptyVector);
        }
        if amplitudes.len() > MAX_DIM {
            return Err(MathError::Capacity {
                what: format!("statevector dimension {} exceeds {}", amplitudes.len(), MAX_DIM),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(MathError::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self, MathError> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(MathError::NotNormalized { norm, tol: NORM_TOL });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        PureState::new(amplitudes)
    }

    /// Computational basis state `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self, MathError> {
        if k >= dim {
            return Err(MathError::DimensionMismatch {
                expected: dim,
                actual: k,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        PureState::new(amplitudes)
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩ = Σ_i conj(self_i) other_i`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64, MathError> {
        if self.dimension() != other.dimension() {
            return Err(MathError::DimensionMismatch {
                expected: self.dimension(),
                actual: other.dimension(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, the overlap probability.
    pub fn overlap_sq(&self, other: &PureState) -> Result<f64, MathError> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Trace distance `½‖ρ − σ‖₁ = √(1 − |⟨ψ|φ⟩|²)` between the two pure
    /// states' density matrices.
    pub fn trace_distance(&self, other: &PureState) -> Result<f64, MathError> {
        Ok((1.0 - self.overlap_sq(other)?).max(0.0).sqrt())
    }

    /// True when the first amplitude of modulus above `1e-12` is real and
    /// non-negative.
    pub fn is_canonical_phase(&self) -> bool {
        match self.leading_amplitude() {
            Some(a) => a.im.abs() <= 1e-12 && a.re >= 0.0,
            None => true,
        }
    }

    /// Rotates away the global phase so the first non-negligible amplitude is
    /// real and ≥ 0. Global phase never affects measurement statistics, so
    /// this fixes a canonical representative per physical state.
    pub fn canonicalized(&self) -> PureState {
        let phase = match self.leading_amplitude() {
            Some(a) if a.norm() > 0.0 => a.conj() / a.norm(),
            _ => Complex64::new(1.0, 0.0),
        };
        PureState {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    fn leading_amplitude(&self) -> Option<Complex64> {
        self.amplitudes.iter().copied().find(|a| a.norm() > 1e-12)
    }

    /// Embeds into a larger dimension by appending zero amplitudes.
    pub fn padded(&self, new_dim: usize) -> Result<PureState, MathError> {
        if new_dim < self.dimension() {
            return Err(MathError::DimensionMismatch {
                expected: self.dimension(),
                actual: new_dim,
            });
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(new_dim, Complex64::new(0.0, 0.0));
        PureState::new(amplitudes)
    }

    /// Born-rule outcome probabilities in the computational basis.
    pub fn born_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}
