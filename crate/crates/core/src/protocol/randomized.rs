//! Randomized protocols as mixtures of deterministic trees, and the
//! rectangle accounting identity for their acceptance probability.

use super::rectangle::Rectangle;
use super::tree::ProtocolTree;
use super::ProtocolError;
use rand::Rng;

pub const WEIGHT_TOL: f64 = 1e-12;

/// A shared-randomness protocol: a finite mixture of deterministic trees,
/// all over the same domain and within the same depth bound `c`.
#[derive(Debug, Clone)]
pub struct RandomizedProtocol {
    support: Vec<(ProtocolTree, f64)>,
}

impl RandomizedProtocol {
    pub fn new(support: Vec<(ProtocolTree, f64)>) -> Result<Self, ProtocolError> {
        if support.is_empty() {
            return Err(ProtocolError::BadWeights { total: 0.0 });
        }
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > WEIGHT_TOL || support.iter().any(|&(_, w)| w < 0.0) {
            return Err(ProtocolError::BadWeights { total });
        }
        let (x_size, y_size, depth) = {
            let t = &support[0].0;
            (t.x_size(), t.y_size(), t.depth_bound())
        };
        if support.iter().any(|(t, _)| {
            t.x_size() != x_size || t.y_size() != y_size || t.depth_bound() != depth
        }) {
            return Err(ProtocolError::MixedSupport);
        }
        Ok(RandomizedProtocol { support })
    }

    /// Mixture with a single deterministic tree.
    pub fn deterministic(tree: ProtocolTree) -> Self {
        RandomizedProtocol {
            support: vec![(tree, 1.0)],
        }
    }

    /// Uniformly weighted random mixture of `count` random trees.
    pub fn random<R: Rng + ?Sized>(
        x_size: usize,
        y_size: usize,
        depth: usize,
        count: usize,
        rng: &mut R,
    ) -> Result<Self, ProtocolError> {
        let weight = 1.0 / count as f64;
        let mut support = Vec::with_capacity(count);
        for _ in 0..count {
            support.push((ProtocolTree::random(x_size, y_size, depth, rng)?, weight));
        }
        // Make the weights sum to 1 exactly regardless of rounding.
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        for (_, w) in &mut support {
            *w /= total;
        }
        RandomizedProtocol::new(support)
    }

    pub fn support(&self) -> &[(ProtocolTree, f64)] {
        &self.support
    }

    /// Shared depth bound `c`.
    pub fn depth_bound(&self) -> usize {
        self.support[0].0.depth_bound()
    }

    pub fn x_size(&self) -> usize {
        self.support[0].0.x_size()
    }

    pub fn y_size(&self) -> usize {
        self.support[0].0.y_size()
    }

    /// `Pr[accept (x, y)]` over the protocol's internal randomness.
    pub fn acceptance_probability(&self, x: usize, y: usize) -> f64 {
        self.support
            .iter()
            .filter(|(tree, _)| tree.run(x, y).output)
            .map(|(_, w)| w)
            .sum()
    }
}

/// A distribution on input pairs, stored dense in row-major order
/// (`p[x * y_size + y]`).
#[derive(Debug, Clone)]
pub struct JointDistribution {
    x_size: usize,
    y_size: usize,
    p: Vec<f64>,
}

impl JointDistribution {
    pub fn new(x_size: usize, y_size: usize, p: Vec<f64>) -> Result<Self, ProtocolError> {
        if p.len() != x_size * y_size {
            return Err(ProtocolError::Math(crate::math::MathError::DimensionMismatch {
                expected: x_size * y_size,
                actual: p.len(),
            }));
        }
        if let Some(&value) = p.iter().find(|&&v| v < 0.0) {
            return Err(ProtocolError::NegativeJoint { value });
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ProtocolError::UnnormalizedJoint { total });
        }
        Ok(JointDistribution { x_size, y_size, p })
    }

    pub fn uniform(x_size: usize, y_size: usize) -> Self {
        let w = 1.0 / (x_size * y_size) as f64;
        JointDistribution {
            x_size,
            y_size,
            p: vec![w; x_size * y_size],
        }
    }

    /// Random distribution with i.i.d. exponential weights, normalized.
    pub fn random<R: Rng + ?Sized>(x_size: usize, y_size: usize, rng: &mut R) -> Self {
        let mut p: Vec<f64> = (0..x_size * y_size)
            .map(|_| -rng.gen::<f64>().max(1e-300).ln())
            .collect();
        let total: f64 = p.iter().sum();
        for v in &mut p {
            *v /= total;
        }
        JointDistribution { x_size, y_size, p }
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.y_size + y]
    }

    /// Mass of a rectangle with explicit sides.
    pub fn rect_mass(&self, rect: &Rectangle) -> f64 {
        let mut mass = 0.0;
        for x in rect.a().member_indices() {
            for y in rect.b().member_indices() {
                mass += self.prob(x, y);
            }
        }
        mass
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }
}

/// The two-bucket accounting of a randomized protocol's acceptance
/// probability.
///
/// Splitting each tree's accepting leaf rectangles at mass `2^{-2c}` gives
/// `total = eta + large_rect_sum` with `eta < 2^{-c}`: a deterministic tree
/// of depth `c` has at most `2^c` leaves, so the small-rectangle bucket of
/// each tree is below `2^c · 2^{-2c}`.
#[derive(Debug, Clone, Copy)]
pub struct AcceptanceAccounting {
    /// Average accepting mass, `Σ_D π(D) Σ_{accepting R of D} μ(R)`.
    pub total: f64,
    /// Contribution of rectangles with `μ(R) < 2^{-2c}`.
    pub eta: f64,
    /// Contribution of rectangles with `μ(R) ≥ 2^{-2c}`.
    pub large_rect_sum: f64,
    /// The mass threshold `2^{-2c}`.
    pub threshold: f64,
    /// The guaranteed bound `2^{-c}` on `eta`.
    pub eta_bound: f64,
}

/// Computes the accounting identity for `protocol` under `mu`.
///
/// `total` is defined as `eta + large_rect_sum`, so that identity is exact by
/// construction; tests compare it against per-pair enumeration.
pub fn acceptance_accounting(
    protocol: &RandomizedProtocol,
    mu: &JointDistribution,
) -> Result<AcceptanceAccounting, ProtocolError> {
    if mu.x_size() != protocol.x_size() || mu.y_size() != protocol.y_size() {
        return Err(ProtocolError::Math(crate::math::MathError::DimensionMismatch {
            expected: protocol.x_size(),
            actual: mu.x_size(),
        }));
    }
    let c = protocol.depth_bound();
    let threshold = 0.5f64.powi(2 * c as i32);
    let eta_bound = 0.5f64.powi(c as i32);
    let mut eta = 0.0;
    let mut large = 0.0;
    for (tree, weight) in protocol.support() {
        for (rect, accept) in tree.decompose_to_rectangles()? {
            if !accept {
                continue;
            }
            let mass = mu.rect_mass(&rect);
            if mass < threshold {
                eta += weight * mass;
            } else {
                large += weight * mass;
            }
        }
    }
    Ok(AcceptanceAccounting {
        total: eta + large,
        eta,
        large_rect_sum: large,
        threshold,
        eta_bound,
    })
}

/// Direct per-pair acceptance probability `Σ_{x,y} μ(x,y) Pr[accept (x,y)]`,
/// the enumeration oracle for [`acceptance_accounting`].
pub fn acceptance_probability_direct(
    protocol: &RandomizedProtocol,
    mu: &JointDistribution,
) -> f64 {
    let mut total = 0.0;
    for x in 0..mu.x_size() {
        for y in 0..mu.y_size() {
            let p = mu.prob(x, y);
            if p > 0.0 {
                total += p * protocol.acceptance_probability(x, y);
            }
        }
    }
    total
}
