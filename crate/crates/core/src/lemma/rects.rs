//! Rectangle families for anticoncentration sweeps.
//!
//! The inequality under test quantifies over all large rectangles, so the
//! sweep draws from families chosen to stress it: plain random sets at a
//! target density, Hamming balls, signed threshold (majority-like) sets, and
//! leaf rectangles of random protocol trees.

use crate::protocol::rectangle::{Rectangle, Side};
use crate::protocol::tree::ProtocolTree;
use crate::protocol::ProtocolError;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum RectangleFamily {
    /// Each index independently kept with the given probability.
    RandomDensity { density: f64 },
    /// All strings within the radius of a random center.
    HammingBall { radius: u32 },
    /// `{x : Σ_i c_i x_i ≥ threshold}` for a random orientation `c`;
    /// threshold 0 with `c = 1…1` is the majority set.
    Threshold { threshold: i64 },
    /// Accepting-or-not leaf rectangles of a random protocol tree.
    ProtocolLeaves { depth: usize },
}

impl RectangleFamily {
    pub fn name(&self) -> &'static str {
        match self {
            RectangleFamily::RandomDensity { .. } => "random-density",
            RectangleFamily::HammingBall { .. } => "hamming-ball",
            RectangleFamily::Threshold { .. } => "threshold",
            RectangleFamily::ProtocolLeaves { .. } => "protocol-leaves",
        }
    }

    /// Draws one or more rectangles over `{±1}^len` (indexed by bit pattern).
    pub fn generate<R: Rng + ?Sized>(
        &self,
        len: usize,
        rng: &mut R,
    ) -> Result<Vec<Rectangle>, ProtocolError> {
        let size = 1usize << len;
        match *self {
            RectangleFamily::RandomDensity { density } => {
                let side = |rng: &mut R| -> Side {
                    Side::bits((0..size).map(|_| rng.gen::<f64>() < density).collect())
                };
                Ok(vec![Rectangle::new(side(rng), side(rng))])
            }
            RectangleFamily::HammingBall { radius } => {
                let side = |rng: &mut R| -> Side {
                    let center = rng.gen_range(0..size);
                    Side::bits(
                        (0..size)
                            .map(|i| (i ^ center).count_ones() <= radius)
                            .collect(),
                    )
                };
                Ok(vec![Rectangle::new(side(rng), side(rng))])
            }
            RectangleFamily::Threshold { threshold } => {
                let side = |rng: &mut R| -> Side {
                    let orientation: Vec<i64> = (0..len)
                        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                        .collect();
                    Side::bits(
                        (0..size)
                            .map(|pattern| {
                                let score: i64 = (0..len)
                                    .map(|bit| {
                                        // Pattern bit set means entry −1.
                                        let sign = if pattern >> bit & 1 == 1 { -1 } else { 1 };
                                        orientation[bit] * sign
                                    })
                                    .sum();
                                score >= threshold
                            })
                            .collect(),
                    )
                };
                Ok(vec![Rectangle::new(side(rng), side(rng))])
            }
            RectangleFamily::ProtocolLeaves { depth } => {
                let tree = ProtocolTree::random(size, size, depth, rng)?;
                Ok(tree
                    .decompose_to_rectangles()?
                    .into_iter()
                    .map(|(rect, _)| rect)
                    .collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master;

    #[test]
    fn family_shapes_are_sane() {
        let mut rng = master(171);
        let len = 6;
        let full = 1usize << len;

        let rects = RectangleFamily::RandomDensity { density: 0.5 }
            .generate(len, &mut rng)
            .unwrap();
        let count = rects[0].a().count();
        assert!(count > 0 && count < full);

        let rects = RectangleFamily::HammingBall { radius: 6 }
            .generate(len, &mut rng)
            .unwrap();
        assert_eq!(rects[0].a().count(), full);

        let rects = RectangleFamily::Threshold { threshold: -(len as i64) }
            .generate(len, &mut rng)
            .unwrap();
        assert_eq!(rects[0].a().count(), full);

        let rects = RectangleFamily::ProtocolLeaves { depth: 3 }
            .generate(len, &mut rng)
            .unwrap();
        assert_eq!(rects.len(), 8);
        // Leaves partition the product space.
        let total: usize = rects.iter().map(|r| r.a().count() * r.b().count()).sum();
        assert_eq!(total, full * full);
    }

    #[test]
    fn hamming_ball_radius_zero_is_singleton() {
        let mut rng = master(172);
        let rects = RectangleFamily::HammingBall { radius: 0 }
            .generate(5, &mut rng)
            .unwrap();
        assert_eq!(rects[0].a().count(), 1);
    }
}
