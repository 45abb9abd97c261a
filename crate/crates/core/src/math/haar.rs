//! Haar-distributed pure states and unitaries.

use super::state::PureState;
use super::MathError;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Draws a state uniformly from the unit sphere of `C^dim`: fill the vector
/// with independent standard complex Gaussians, then normalize. Unitary
/// invariance of the Gaussian makes the result Haar-distributed.
pub fn haar_random_state<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> Result<PureState, MathError> {
    if dim == 0 {
        return Err(MathError::EmptyVector);
    }
    loop {
        let amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        // Zero norm has probability 0; retry guards against it anyway.
        if let Ok(state) = PureState::normalized(amplitudes) {
            return Ok(state);
        }
    }
}

/// Haar state drawn inside the subspace spanned by `basis` (orthonormal
/// columns): Gaussian coefficients over the basis, normalized.
pub fn haar_random_state_in_span<R: Rng + ?Sized>(
    basis: &[PureState],
    rng: &mut R,
) -> Result<PureState, MathError> {
    if basis.is_empty() {
        return Err(MathError::EmptyVector);
    }
    let dim = basis[0].dimension();
    loop {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        for vector in basis {
            let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            for (acc, &a) in amplitudes.iter_mut().zip(vector.amplitudes()) {
                *acc += c * a;
            }
        }
        if let Ok(state) = PureState::normalized(amplitudes) {
            return Ok(state);
        }
    }
}

/// Haar-random unitary via QR of a complex Ginibre matrix, with the phases of
/// the diagonal of `R` absorbed into `Q` so the distribution is exactly Haar.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let ginibre = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = ginibre.qr();
    let r_diag = qr.r().diagonal();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r_diag[j];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master;

    #[test]
    fn dimension_one_is_a_phase() {
        let mut rng = master(31);
        let psi = haar_random_state(1, &mut rng).unwrap();
        assert!((psi.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_dimension_zero() {
        let mut rng = master(31);
        assert!(haar_random_state(0, &mut rng).is_err());
    }

    #[test]
    fn basis_overlap_is_uniform_on_average() {
        // By symmetry E |⟨e_0|φ⟩|² = 1/4 in dimension 4.
        let mut rng = master(32);
        let e0 = PureState::basis(4, 0).unwrap();
        let trials = 100_000;
        let mean = (0..trials)
            .map(|_| {
                let phi = haar_random_state(4, &mut rng).unwrap();
                e0.overlap_sq(&phi).unwrap()
            })
            .sum::<f64>()
            / trials as f64;
        // Var |⟨e_0|φ⟩|² = d−1 / (d²(d+1)) = 3/80; 3σ of the mean estimate.
        let sigma = (3.0f64 / 80.0 / trials as f64).sqrt();
        assert!((mean - 0.25).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = master(33);
        let u = haar_random_unitary(6, &mut rng);
        let id = DMatrix::<Complex64>::identity(6, 6);
        let prod = &u * u.adjoint();
        assert!((prod - id).norm() < 1e-10);
    }

    #[test]
    fn span_sampling_stays_in_span() {
        let mut rng = master(34);
        let basis = vec![PureState::basis(6, 1).unwrap(), PureState::basis(6, 4).unwrap()];
        for _ in 0..10 {
            let psi = haar_random_state_in_span(&basis, &mut rng).unwrap();
            let amps = psi.amplitudes();
            for (i, a) in amps.iter().enumerate() {
                if i != 1 && i != 4 {
                    assert_eq!(a.norm(), 0.0);
                }
            }
        }
    }
}
