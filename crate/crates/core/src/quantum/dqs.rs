//! Distributed quantum sampling: Alice holds a pure state, Bob a POVM, and
//! the task is to sample from the measurement's outcome distribution.

use crate::math::dist::OutcomeDistribution;
use crate::math::measurement::Measurement;
use crate::math::state::PureState;
use crate::math::MathError;

/// An instance pairs the state with the measurement; dimensions must match.
#[derive(Debug, Clone)]
pub struct DqsInstance {
    psi: PureState,
    measurement: Measurement,
}

impl DqsInstance {
    pub fn new(psi: PureState, measurement: Measurement) -> Result<Self, MathError> {
        if psi.dimension() != measurement.dimension() {
            return Err(MathError::DimensionMismatch {
                expected: measurement.dimension(),
                actual: psi.dimension(),
            });
        }
        Ok(DqsInstance { psi, measurement })
    }

    pub fn psi(&self) -> &PureState {
        &self.psi
    }

    pub fn measurement(&self) -> &Measurement {
        &self.measurement
    }

    pub fn dimension(&self) -> usize {
        self.psi.dimension()
    }
}

/// The exact outcome distribution `p_j = ⟨ψ|E_j|ψ⟩` of the instance.
pub fn dqs_distribution(inst: &DqsInstance) -> Result<OutcomeDistribution, MathError> {
    inst.measurement.outcome_distribution(&inst.psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::haar::haar_random_state;
    use crate::rng::master;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    #[test]
    fn basis_measurement_of_basis_state_is_point_mass() {
        let psi = PureState::basis(4, 0).unwrap();
        let m = Measurement::computational_basis(4).unwrap();
        let inst = DqsInstance::new(psi, m).unwrap();
        let dist = dqs_distribution(&inst).unwrap();
        assert_eq!(dist.prob(0), 1.0);
    }

    #[test]
    fn projective_promise_state_inside_range() {
        // M = |0⟩⟨0| + |1⟩⟨1| on C^4 and ψ in its range: outcome (1, 0).
        let mut p = DMatrix::<Complex64>::zeros(4, 4);
        p[(0, 0)] = Complex64::new(1.0, 0.0);
        p[(1, 1)] = Complex64::new(1.0, 0.0);
        let m = Measurement::projective(p).unwrap();
        let psi = PureState::normalized(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let inst = DqsInstance::new(psi, m).unwrap();
        let dist = dqs_distribution(&inst).unwrap();
        assert!((dist.prob(0) - 1.0).abs() < 1e-12);
        assert_eq!(dist.prob(1), 0.0);
    }

    #[test]
    fn random_povm_distribution_is_normalized() {
        let mut rng = master(91);
        let m = Measurement::random_povm(8, 4, &mut rng).unwrap();
        let psi = haar_random_state(8, &mut rng).unwrap();
        let inst = DqsInstance::new(psi, m).unwrap();
        let dist = dqs_distribution(&inst).unwrap();
        assert!((dist.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let psi = PureState::basis(2, 0).unwrap();
        let m = Measurement::computational_basis(4).unwrap();
        assert!(DqsInstance::new(psi, m).is_err());
    }
}
