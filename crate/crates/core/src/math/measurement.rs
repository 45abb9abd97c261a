//! Quantum measurements: general POVMs and two-outcome projective
//! measurements, with validation against the defining operator identities.

use super::dist::OutcomeDistribution;
use super::haar::haar_random_unitary;
use super::state::PureState;
use super::MathError;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Entrywise tolerance for PSD/identity/idempotence checks.
pub const OPERATOR_TOL: f64 = 1e-9;

/// Tolerance on the imaginary part of `⟨ψ|E|ψ⟩`.
pub const IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementKind {
    /// Two outcomes `{M, I − M}` with `M` an orthogonal projector.
    ProjectiveTwoOutcome,
    /// Arbitrary finite POVM.
    GeneralPovm,
}

/// A quantum measurement: a list of PSD operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Measurement {
    kind: MeasurementKind,
    operators: Vec<DMatrix<Complex64>>,
}

impl Measurement {
    /// General POVM from its effect operators. Validates Hermiticity, PSD
    /// within `1e-9`, and that the operators sum to the identity entrywise
    /// within `1e-9`.
    pub fn povm(operators: Vec<DMatrix<Complex64>>) -> Result<Self, MathError> {
        Self::validate(&operators)?;
        Ok(Measurement {
            kind: MeasurementKind::GeneralPovm,
            operators,
        })
    }

    /// Two-outcome projective measurement `{M, I − M}`. On top of the POVM
    /// checks, requires `M² = M` entrywise within `1e-9`.
    pub fn projective(projector: DMatrix<Complex64>) -> Result<Self, MathError> {
        let dim = projector.nrows();
        let idempotence = (&projector * &projector) - &projector;
        if max_abs(&idempotence) > OPERATOR_TOL {
            return Err(MathError::InvalidMeasurement(format!(
                "projector fails M^2 = M by {:.3e}",
                max_abs(&idempotence)
            )));
        }
        let complement = DMatrix::<Complex64>::identity(dim, dim) - &projector;
        let operators = vec![projector, complement];
        Self::validate(&operators)?;
        Ok(Measurement {
            kind: MeasurementKind::ProjectiveTwoOutcome,
            operators,
        })
    }

    /// Computational-basis measurement: projectors `|j⟩⟨j|`.
    pub fn computational_basis(dim: usize) -> Result<Self, MathError> {
        let operators: Vec<DMatrix<Complex64>> = (0..dim)
            .map(|j| {
                DMatrix::from_fn(dim, dim, |r, c| {
                    if r == j && c == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self::validate_basic_only(&operators)?;
        Ok(Measurement {
            kind: MeasurementKind::GeneralPovm,
            operators,
        })
    }

    /// Projector of the given rank onto a Haar-random subspace.
    pub fn random_projective<R: Rng + ?Sized>(
        dim: usize,
        rank: usize,
        rng: &mut R,
    ) -> Result<Self, MathError> {
        if rank > dim {
            return Err(MathError::DimensionMismatch {
                expected: dim,
                actual: rank,
            });
        }
        let u = haar_random_unitary(dim, rng);
        let mut p = DMatrix::<Complex64>::zeros(dim, dim);
        for k in 0..rank {
            let col = u.column(k);
            for i in 0..dim {
                for j in 0..dim {
                    p[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        Self::projective(p)
    }

    /// Random POVM with `outcomes` effects: Wishart matrices `G G†`, jointly
    /// renormalized by `S^{-1/2} (·) S^{-1/2}` so they sum to the identity.
    pub fn random_povm<R: Rng + ?Sized>(
        dim: usize,
        outcomes: usize,
        rng: &mut R,
    ) -> Result<Self, MathError> {
        use rand_distr::StandardNormal;
        if outcomes == 0 {
            return Err(MathError::EmptyVector);
        }
        let raw: Vec<DMatrix<Complex64>> = (0..outcomes)
            .map(|_| {
                let g = DMatrix::from_fn(dim, dim, |_, _| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                });
                &g * g.adjoint()
            })
            .collect();
        let mut total = DMatrix::<Complex64>::zeros(dim, dim);
        for a in &raw {
            total += a;
        }
        let inv_sqrt = hermitian_inverse_sqrt(&total)?;
        let operators: Vec<_> = raw.iter().map(|a| &inv_sqrt * a * &inv_sqrt).collect();
        Self::povm(operators)
    }

    fn validate(operators: &[DMatrix<Complex64>]) -> Result<(), MathError> {
        Self::validate_basic_only(operators)?;
        for (j, op) in operators.iter().enumerate() {
            let eigenvalues = op.clone().symmetric_eigen().eigenvalues;
            if eigenvalues.iter().any(|&v| v < -OPERATOR_TOL) {
                let min = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                return Err(MathError::InvalidMeasurement(format!(
                    "operator {j} has eigenvalue {min:.3e} below -1e-9"
                )));
            }
        }
        Ok(())
    }

    /// Shape, Hermiticity and sum-to-identity checks (no eigensolve); enough
    /// for operators that are PSD by construction.
    fn validate_basic_only(operators: &[DMatrix<Complex64>]) -> Result<(), MathError> {
        if operators.is_empty() {
            return Err(MathError::EmptyVector);
        }
        let dim = operators[0].nrows();
        let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
        for (j, op) in operators.iter().enumerate() {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(MathError::DimensionMismatch {
                    expected: dim,
                    actual: op.nrows(),
                });
            }
            let asym = op - op.adjoint();
            if max_abs(&asym) > OPERATOR_TOL {
                return Err(MathError::InvalidMeasurement(format!(
                    "operator {j} is not Hermitian (deviation {:.3e})",
                    max_abs(&asym)
                )));
            }
            sum += op;
        }
        let deviation = sum - DMatrix::<Complex64>::identity(dim, dim);
        if max_abs(&deviation) > OPERATOR_TOL {
            return Err(MathError::InvalidMeasurement(format!(
                "operators sum to identity only within {:.3e}",
                max_abs(&deviation)
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> MeasurementKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn outcomes(&self) -> usize {
        self.operators.len()
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.operators
    }

    /// `⟨ψ|E_j|ψ⟩` as a complex number (the imaginary part is a numerical
    /// residue the caller may want to inspect).
    pub fn expectation(&self, j: usize, psi: &PureState) -> Result<Complex64, MathError> {
        if psi.dimension() != self.dimension() {
            return Err(MathError::DimensionMismatch {
                expected: self.dimension(),
                actual: psi.dimension(),
            });
        }
        let op = &self.operators[j];
        let amps = psi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..amps.len() {
            let mut row = Complex64::new(0.0, 0.0);
            for c in 0..amps.len() {
                row += op[(r, c)] * amps[c];
            }
            acc += amps[r].conj() * row;
        }
        Ok(acc)
    }

    /// Born-rule outcome distribution `p_j = ⟨ψ|E_j|ψ⟩` of measuring `psi`.
    ///
    /// Fails if any imaginary residue exceeds `1e-10` or the probabilities do
    /// not form a distribution within tolerance.
    pub fn outcome_distribution(&self, psi: &PureState) -> Result<OutcomeDistribution, MathError> {
        let mut probs = std::collections::BTreeMap::new();
        for j in 0..self.outcomes() {
            let value = self.expectation(j, psi)?;
            if value.im.abs() > IMAG_TOL {
                return Err(MathError::InvalidMeasurement(format!(
                    "outcome {j} has imaginary expectation {:.3e}",
                    value.im
                )));
            }
            probs.insert(j as u64, value.re);
        }
        OutcomeDistribution::new(probs)
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `S^{-1/2}` for a Hermitian positive definite `S`, via eigendecomposition.
fn hermitian_inverse_sqrt(s: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, MathError> {
    let eig = s.clone().symmetric_eigen();
    let dim = s.nrows();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..dim {
        let lambda = eig.eigenvalues[k];
        if lambda <= 0.0 {
            return Err(MathError::InvalidMeasurement(
                "operator sum is singular".to_string(),
            ));
        }
        let scale = Complex64::new(1.0 / lambda.sqrt(), 0.0);
        let v = eig.eigenvectors.column(k);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += scale * v[i] * v[j].conj();
            }
        }
    }
    Ok(out)
}
