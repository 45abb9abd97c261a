//! Distributed Fourier sampling.
//!
//! Alice holds a ±1 function table `f` on `n` bits, Bob holds `g`; the target
//! distribution on `n`-bit strings puts mass `p(s) = ĥ(s)²` on `s`, where
//! `ĥ` is the normalized Fourier coefficient of the product table `h = fg`.
//!
//! The quantum solution sends the `n`-qubit state with amplitudes
//! `f(x)/√(2^n)`; Bob multiplies in his `g` phases, Hadamards every qubit and
//! measures. Both the closed-form distribution and that explicit statevector
//! pipeline are implemented; they must agree to `1e-10` before any sampling
//! happens.

use crate::math::dist::OutcomeDistribution;
use crate::math::sign::SignVector;
use crate::math::state::PureState;
use crate::math::wht::walsh_hadamard;
use crate::math::MathError;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Statevector paths stop being desk-scale past this many qubits.
pub const MAX_QUBITS: usize = 10;

/// Agreement tolerance between the closed form and the statevector pipeline.
pub const PIPELINE_TOL: f64 = 1e-10;

/// An instance: two ±1 tables of length `2^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DfsInstanceRaw", into = "DfsInstanceRaw")]
pub struct DfsInstance {
    f: SignVector,
    g: SignVector,
    qubits: usize,
}

/// JSON wire form: `{"n": 2, "f": [1,-1,...], "g": [...]}`.
#[derive(Debug, Serialize, Deserialize)]
struct DfsInstanceRaw {
    n: usize,
    f: Vec<i8>,
    g: Vec<i8>,
}

impl DfsInstance {
    pub fn new(f: SignVector, g: SignVector) -> Result<Self, MathError> {
        if f.len() != g.len() {
            return Err(MathError::DimensionMismatch {
                expected: f.len(),
                actual: g.len(),
            });
        }
        if !f.len().is_power_of_two() {
            return Err(MathError::NotPowerOfTwo { len: f.len() });
        }
        let qubits = f.len().trailing_zeros() as usize;
        if qubits > MAX_QUBITS {
            return Err(MathError::Capacity {
                what: format!("{qubits} qubits exceeds the cap of {MAX_QUBITS}"),
            });
        }
        Ok(DfsInstance { f, g, qubits })
    }

    pub fn random<R: Rng + ?Sized>(qubits: usize, rng: &mut R) -> Result<Self, MathError> {
        let len = 1usize << qubits;
        DfsInstance::new(SignVector::random(len, rng), SignVector::random(len, rng))
    }

    pub fn from_json(text: &str) -> Result<Self, MathError> {
        serde_json::from_str(text).map_err(|e| MathError::Capacity {
            what: format!("malformed instance document: {e}"),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization")
    }

    pub fn f(&self) -> &SignVector {
        &self.f
    }

    pub fn g(&self) -> &SignVector {
        &self.g
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }
}

impl TryFrom<DfsInstanceRaw> for DfsInstance {
    type Error = MathError;

    fn try_from(raw: DfsInstanceRaw) -> Result<Self, MathError> {
        let inst = DfsInstance::new(SignVector::new(raw.f)?, SignVector::new(raw.g)?)?;
        if inst.qubits != raw.n {
            return Err(MathError::DimensionMismatch {
                expected: 1 << raw.n,
                actual: inst.dimension(),
            });
        }
        Ok(inst)
    }
}

impl From<DfsInstance> for DfsInstanceRaw {
    fn from(inst: DfsInstance) -> DfsInstanceRaw {
        DfsInstanceRaw {
            n: inst.qubits,
            f: inst.f.into(),
            g: inst.g.into(),
        }
    }
}

/// Closed-form target distribution: squared Fourier coefficients of `fg`.
pub fn dfs_distribution(inst: &DfsInstance) -> Result<OutcomeDistribution, MathError> {
    let product = inst.f.pointwise_product(&inst.g)?;
    let coeffs = walsh_hadamard(&product)?;
    let probs: Vec<f64> = coeffs.iter().map(|c| c * c).collect();
    OutcomeDistribution::from_dense(&probs)
}

/// Hadamard on every qubit of a statevector (in place), with the `1/√2`
/// normalization applied per qubit.
pub(crate) fn hadamard_all(amps: &mut [Complex64]) {
    debug_assert!(amps.len().is_power_of_two());
    let n = amps.len();
    let scale = 1.0 / (n as f64).sqrt();
    let mut half = 1;
    while half < n {
        for block in (0..n).step_by(half * 2) {
            for i in block..block + half {
                let (a, b) = (amps[i], amps[i + half]);
                amps[i] = a + b;
                amps[i + half] = a - b;
            }
        }
        half *= 2;
    }
    for a in amps {
        *a *= scale;
    }
}

/// The explicit quantum pipeline: build `|ψ_f⟩`, apply the diagonal `g`
/// phases, Hadamard every qubit, and read out Born-rule probabilities.
pub fn dfs_statevector_pmf(inst: &DfsInstance) -> Result<OutcomeDistribution, MathError> {
    let dim = inst.dimension();
    let scale = 1.0 / (dim as f64).sqrt();
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|x| Complex64::new(inst.f.get(x) as f64 * scale, 0.0))
        .collect();
    for (x, a) in amps.iter_mut().enumerate() {
        *a *= inst.g.get(x) as f64;
    }
    hadamard_all(&mut amps);
    let state = PureState::new(amps)?;
    OutcomeDistribution::from_dense(&state.born_probabilities())
}

/// Samples `shots` outcomes from the quantum protocol.
///
/// The statevector pipeline's distribution is computed first and checked
/// against the closed form to `1e-10`; sampling then draws from the pipeline
/// distribution.
pub fn dfs_quantum_simulate<R: Rng + ?Sized>(
    inst: &DfsInstance,
    shots: usize,
    rng: &mut R,
) -> Result<Vec<u64>, MathError> {
    let pipeline = dfs_statevector_pmf(inst)?;
    let closed = dfs_distribution(inst)?;
    let gap = pipeline.l1_distance(&closed);
    if gap > PIPELINE_TOL {
        return Err(MathError::Capacity {
            what: format!("pipeline disagrees with closed form by {gap:.3e}"),
        });
    }
    Ok(pipeline.sample_many(shots, rng))
}
