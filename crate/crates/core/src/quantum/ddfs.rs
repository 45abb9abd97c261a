//! Doubly distributed Fourier sampling: with shared entanglement and no
//! communication, Alice outputs `s` and Bob outputs `t` so that `s ⊕ t` is
//! distributed exactly as the Fourier-sampling target of the product table.
//!
//! The joint law is `q(s, t) = p(s ⊕ t) / 2^n` — uniform over the `2^n`
//! decompositions of each XOR value. Samples are drawn from this closed form
//! (the value `u ~ p`, the split `s` uniform, `t = s ⊕ u`); a genuine
//! `2n`-qubit statevector pipeline is kept for small instances as an
//! independent route to the same joint distribution.
//!
//! Joint outcomes are packed as `(s << n) | t`.

use super::dfs::{dfs_distribution, hadamard_all, DfsInstance};
use crate::math::dist::OutcomeDistribution;
use crate::math::MathError;
use num_complex::Complex64;
use rand::Rng;

/// The 4^n-entry statevector path is kept desk-scale.
pub const MAX_STATEVECTOR_QUBITS: usize = 4;

/// Packs a joint outcome.
pub fn pack_pair(s: u64, t: u64, qubits: usize) -> u64 {
    (s << qubits) | t
}

/// Unpacks a joint outcome.
pub fn unpack_pair(key: u64, qubits: usize) -> (u64, u64) {
    (key >> qubits, key & ((1u64 << qubits) - 1))
}

/// Exact joint distribution `q(s, t) = p(s ⊕ t) / 2^n`.
pub fn ddfs_joint_pmf(inst: &DfsInstance) -> Result<OutcomeDistribution, MathError> {
    let p = dfs_distribution(inst)?;
    let dim = inst.dimension() as u64;
    let mut probs = std::collections::BTreeMap::new();
    for s in 0..dim {
        for t in 0..dim {
            let mass = p.prob(s ^ t) / dim as f64;
            if mass > 0.0 {
                probs.insert(pack_pair(s, t, inst.qubits()), mass);
            }
        }
    }
    OutcomeDistribution::new(probs)
}

/// Draws `shots` joint outcomes `(s, t)` from the exact joint law:
/// `u` from the Fourier-sampling target, `s` uniform, `t = s ⊕ u`.
pub fn ddfs_quantum_sample<R: Rng + ?Sized>(
    inst: &DfsInstance,
    shots: usize,
    rng: &mut R,
) -> Result<Vec<(u64, u64)>, MathError> {
    let p = dfs_distribution(inst)?;
    let dim = inst.dimension() as u64;
    let us = p.sample_many(shots, rng);
    Ok(us
        .into_iter()
        .map(|u| {
            let s = rng.gen_range(0..dim);
            (s, s ^ u)
        })
        .collect())
}

/// Independent route: build the full `2n`-qubit state
/// `(1/√N) Σ_x f(x) g(x) |x⟩|x⟩`, Hadamard all qubits of both halves, and
/// read out the joint Born probabilities.
pub fn ddfs_statevector_joint_pmf(inst: &DfsInstance) -> Result<OutcomeDistribution, MathError> {
    let qubits = inst.qubits();
    if qubits > MAX_STATEVECTOR_QUBITS {
        return Err(MathError::Capacity {
            what: format!(
                "{qubits} qubits exceeds the {MAX_STATEVECTOR_QUBITS}-qubit statevector path"
            ),
        });
    }
    let dim = inst.dimension();
    let scale = 1.0 / (dim as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim * dim];
    for x in 0..dim {
        let value = (inst.f().get(x) * inst.g().get(x)) as f64 * scale;
        amps[pack_pair(x as u64, x as u64, qubits) as usize] = Complex64::new(value, 0.0);
    }
    // Hadamard on all 2n qubits at once: the transform factorizes, and the
    // packed index layout makes the two halves contiguous bit ranges.
    hadamard_all(&mut amps);
    let probs: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
    OutcomeDistribution::from_dense(&probs)
}

/// Marginal of Alice's output under a joint distribution over packed pairs.
pub fn alice_marginal(joint: &OutcomeDistribution, qubits: usize) -> OutcomeDistribution {
    accumulate(joint, |key| unpack_pair(key, qubits).0)
}

/// Distribution of `s ⊕ t` under a joint distribution over packed pairs.
pub fn xor_pushforward(joint: &OutcomeDistribution, qubits: usize) -> OutcomeDistribution {
    accumulate(joint, |key| {
        let (s, t) = unpack_pair(key, qubits);
        s ^ t
    })
}

fn accumulate(joint: &OutcomeDistribution, map: impl Fn(u64) -> u64) -> OutcomeDistribution {
    let mut probs = std::collections::BTreeMap::new();
    for (key, mass) in joint.support() {
        *probs.entry(map(key)).or_insert(0.0) += mass;
    }
    OutcomeDistribution::new(probs).expect("pushforward of a distribution")
}
