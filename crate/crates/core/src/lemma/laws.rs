//! Haar overlap law, projector tail bound, and the cost of approximating a
//! squared Rademacher sum by a constant.

use super::LemmaError;
use crate::math::haar::haar_random_state;
use crate::math::state::PureState;
use crate::math::MathError;
use crate::rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact tail of the squared overlap between a Haar state and a fixed state
/// in dimension `dim`: `Pr[|⟨φ|ψ⟩|² ≥ x] = (1 − x)^{dim − 1}`.
pub fn overlap_tail(dim: usize, x: f64) -> f64 {
    (1.0 - x).max(0.0).powi(dim as i32 - 1)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlapLawReport {
    pub dim: usize,
    pub samples: u64,
    /// Kolmogorov–Smirnov distance between the empirical law of the squared
    /// overlap and the exact law.
    pub ks_distance: f64,
    /// Worst deviation in units of the binomial standard error over the tail
    /// grid x ∈ {0.1, …, 0.9}.
    pub max_tail_z: f64,
}

/// Samples squared overlaps against a fixed basis state (unitary invariance
/// makes the choice irrelevant) and compares with the exact law.
pub fn overlap_law_check(dim: usize, samples: u64, seed: u64) -> Result<OverlapLawReport, LemmaError> {
    if dim < 2 {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "dim",
            value: dim as f64,
            min: 2.0,
            max: f64::INFINITY,
        }));
    }
    let reference = PureState::basis(dim, 0)?;
    let mut values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::worker(seed, i);
            let phi = haar_random_state(dim, &mut rng).expect("dim >= 2");
            reference.overlap_sq(&phi).expect("same dimension")
        })
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len() as f64;
    let mut ks: f64 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let cdf = 1.0 - overlap_tail(dim, v);
        ks = ks.max((cdf - i as f64 / n).abs());
        ks = ks.max(((i + 1) as f64 / n - cdf).abs());
    }
    let mut max_z: f64 = 0.0;
    for tenth in 1..=9 {
        let x = tenth as f64 / 10.0;
        let exact = overlap_tail(dim, x);
        let count = values.iter().filter(|&&v| v >= x).count() as f64;
        let empirical = count / n;
        let sigma = (exact * (1.0 - exact) / n).sqrt().max(1.0 / n);
        max_z = max_z.max((empirical - exact).abs() / sigma);
    }
    Ok(OverlapLawReport {
        dim,
        samples,
        ks_distance: ks,
        max_tail_z: max_z,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProjectorTailReport {
    pub dim: usize,
    pub rank: usize,
    pub delta: f64,
    pub trials: u64,
    pub empirical_tail: f64,
    pub bound: f64,
    /// Binomial standard error of the empirical tail.
    pub std_error: f64,
    /// `empirical ≤ bound + 3σ`.
    pub holds: bool,
}

/// Tail bound for the mass a Haar state puts on a rank-`rank` subspace:
/// `Pr[⟨ψ|P|ψ⟩ ≥ (1+δ) r/N] ≤ exp(−rδ²/3)` for `δ ≤ 1`, `exp(−rδ/3)` above.
pub fn projector_tail_bound(rank: usize, delta: f64) -> f64 {
    let r = rank as f64;
    if delta <= 1.0 {
        (-r * delta * delta / 3.0).exp()
    } else {
        (-r * delta / 3.0).exp()
    }
}

/// Monte Carlo check of the projector tail bound. The projector is fixed to
/// the first `rank` coordinates; unitary invariance of the Haar state makes
/// any rank-`rank` projector equivalent.
pub fn randomproj_tail_check(
    dim: usize,
    rank: usize,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<ProjectorTailReport, LemmaError> {
    if rank == 0 || rank > dim {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "rank",
            value: rank as f64,
            min: 1.0,
            max: dim as f64,
        }));
    }
    if delta < 0.0 {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "delta",
            value: delta,
            min: 0.0,
            max: f64::INFINITY,
        }));
    }
    let threshold = (1.0 + delta) * rank as f64 / dim as f64;
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::worker(seed, i);
            let psi = haar_random_state(dim, &mut rng).expect("dim >= 1");
            let mass: f64 = psi.amplitudes()[..rank].iter().map(|a| a.norm_sqr()).sum();
            u64::from(mass >= threshold)
        })
        .sum();
    let empirical_tail = hits as f64 / trials as f64;
    let bound = projector_tail_bound(rank, delta);
    let std_error = (empirical_tail * (1.0 - empirical_tail) / trials as f64).sqrt();
    Ok(ProjectorTailReport {
        dim,
        rank,
        delta,
        trials,
        empirical_tail,
        bound,
        std_error,
        holds: empirical_tail <= bound + 3.0 * std_error,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RademacherCost {
    pub m: u32,
    /// An optimal constant: a median of the law of the squared sum.
    pub optimal_q: i64,
    /// `min_q E |q − S²|`, computed exactly from the binomial law.
    pub value: f64,
}

/// Exact minimum of `E |q − S_m²|` over constants `q`, where `S_m` is a sum
/// of `m` independent signs.
///
/// The `ℓ1`-optimal constant is any median of the law of `S_m²`; the value
/// is then an exact rational with denominator `2^m`, evaluated with integer
/// binomials (`m ≤ 64`).
pub fn rademacher_square_l1_cost(m: u32) -> Result<RademacherCost, LemmaError> {
    if m == 0 || m > 64 {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "m",
            value: m as f64,
            min: 1.0,
            max: 64.0,
        }));
    }
    // Binomial weights C(m, k) for k heads; S = 2k − m.
    let mut binom = vec![0u128; m as usize + 1];
    binom[0] = 1;
    for k in 0..m as usize {
        binom[k + 1] = binom[k] * (m as u128 - k as u128) / (k as u128 + 1);
    }
    // Law of T = S², ordered by T (fold k and m−k together).
    let mut atoms: Vec<(i64, u128)> = Vec::new();
    for k in 0..=m as i64 {
        let s = 2 * k - m as i64;
        let t = s * s;
        match atoms.iter_mut().find(|(value, _)| *value == t) {
            Some((_, w)) => *w += binom[k as usize],
            None => atoms.push((t, binom[k as usize])),
        }
    }
    atoms.sort_by_key(|&(t, _)| t);
    let total: u128 = atoms.iter().map(|&(_, w)| w).sum();
    // Smallest atom with CDF ≥ 1/2 is a median.
    let mut acc = 0u128;
    let mut median = atoms[0].0;
    for &(t, w) in &atoms {
        acc += w;
        if 2 * acc >= total {
            median = t;
            break;
        }
    }
    let numerator: u128 = atoms
        .iter()
        .map(|&(t, w)| w * (t - median).unsigned_abs() as u128)
        .sum();
    Ok(RademacherCost {
        m,
        optimal_q: median,
        value: numerator as f64 / total as f64,
    })
}
