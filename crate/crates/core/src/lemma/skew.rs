//! The skewed anticoncentration inequality over large rectangles.
//!
//! For correlation `p = √(b/N)` and any skew `s`, every rectangle `R` that is
//! large under the uniform pair measure (`ξ_0(R) ≥ 2^{-δN}`) is claimed to
//! satisfy
//!
//! ```text
//! (e^s ξ_{-p}(R) + e^{-s} ξ_{p}(R)) / 2  ≥  (2/3) ξ_0(R).
//! ```
//!
//! The check evaluates both sides exactly (lengths ≤ 12) or by Monte Carlo
//! with an error allowance of four standard errors. Rectangles below the
//! largeness threshold are reported as skipped, not as violations: the claim
//! says nothing about them.

use super::verdict::CheckVerdict;
use super::LemmaError;
use crate::protocol::rectangle::{rect_measure, MeasureEstimate, MeasureMode, Rectangle};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkewMode {
    Exact,
    MonteCarlo,
}

/// Parameters of one skew check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SkewCheckConfig {
    /// String length `N`.
    pub len: usize,
    /// Correlation scale: `p = √(b/N)`.
    pub b: f64,
    /// Skew exponent `s`.
    pub s: f64,
    /// Largeness exponent: rectangles with `ξ_0(R) < 2^{-δN}` are skipped.
    pub delta: f64,
    pub mode: SkewMode,
    /// Monte Carlo sample count (ignored in exact mode).
    pub samples: u64,
}

impl SkewCheckConfig {
    pub fn correlation(&self) -> f64 {
        (self.b / self.len as f64).sqrt()
    }

    pub fn largeness_threshold(&self) -> f64 {
        2f64.powf(-self.delta * self.len as f64)
    }

    fn validate(&self) -> Result<(), LemmaError> {
        if self.b <= 0.0 {
            return Err(LemmaError::Math(crate::math::MathError::OutOfDomain {
                name: "b",
                value: self.b,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            }));
        }
        if self.delta <= 0.0 {
            return Err(LemmaError::Math(crate::math::MathError::OutOfDomain {
                name: "delta",
                value: self.delta,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            }));
        }
        if self.correlation() > 1.0 {
            return Err(LemmaError::Math(crate::math::MathError::OutOfDomain {
                name: "b/N",
                value: self.b / self.len as f64,
                min: 0.0,
                max: 1.0,
            }));
        }
        Ok(())
    }
}

/// Outcome of one rectangle check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SkewOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Uniform measure of the rectangle.
    pub uniform_mass: f64,
    /// True when the rectangle was below the largeness threshold and the
    /// inequality therefore not asserted.
    pub skipped: bool,
    /// Monte Carlo allowance subtracted from the right side (zero in exact
    /// mode).
    pub tolerance: f64,
    pub holds: bool,
}

/// Evaluates the inequality on one rectangle.
pub fn skewed_anticoncentration_check<R: Rng + ?Sized>(
    cfg: &SkewCheckConfig,
    rect: &Rectangle,
    rng: &mut R,
) -> Result<SkewOutcome, LemmaError> {
    cfg.validate()?;
    let p = cfg.correlation();
    let mode = match cfg.mode {
        SkewMode::Exact => MeasureMode::Exact,
        SkewMode::MonteCarlo => MeasureMode::MonteCarlo {
            samples: cfg.samples,
        },
    };
    let uniform = rect_measure(rect, cfg.len, 0.0, mode, rng)?;
    let threshold = cfg.largeness_threshold();
    if uniform.value < threshold {
        return Ok(SkewOutcome {
            lhs: f64::NAN,
            rhs: 2.0 / 3.0 * uniform.value,
            margin: f64::NAN,
            uniform_mass: uniform.value,
            skipped: true,
            tolerance: 0.0,
            holds: true,
        });
    }
    let minus = rect_measure(rect, cfg.len, -p, mode, rng)?;
    let plus = rect_measure(rect, cfg.len, p, mode, rng)?;
    let lhs = 0.5 * (cfg.s.exp() * minus.value + (-cfg.s).exp() * plus.value);
    let rhs = 2.0 / 3.0 * uniform.value;
    let tolerance = match cfg.mode {
        SkewMode::Exact => 0.0,
        SkewMode::MonteCarlo => 4.0 * combined_std_error(cfg.s, &minus, &plus, &uniform),
    };
    let margin = lhs - rhs;
    Ok(SkewOutcome {
        lhs,
        rhs,
        margin,
        uniform_mass: uniform.value,
        skipped: false,
        tolerance,
        holds: lhs >= rhs - tolerance,
    })
}

fn combined_std_error(
    s: f64,
    minus: &MeasureEstimate,
    plus: &MeasureEstimate,
    uniform: &MeasureEstimate,
) -> f64 {
    let lhs_var = 0.25
        * ((s.exp() * minus.std_error).powi(2) + ((-s).exp() * plus.std_error).powi(2));
    let rhs_var = (2.0 / 3.0 * uniform.std_error).powi(2);
    (lhs_var + rhs_var).sqrt()
}

impl SkewOutcome {
    pub fn verdict(&self, cfg: &SkewCheckConfig, family: &str, seed: u64) -> CheckVerdict {
        CheckVerdict {
            check: "skew-anticoncentration".to_string(),
            params: Default::default(),
            lhs: self.lhs,
            rhs: self.rhs,
            margin: self.margin,
            holds: self.holds,
            samples: match cfg.mode {
                SkewMode::Exact => 0,
                SkewMode::MonteCarlo => cfg.samples,
            },
            seed,
        }
        .with_param("N", cfg.len as u64)
        .with_param("b", cfg.b)
        .with_param("s", cfg.s)
        .with_param("delta", cfg.delta)
        .with_param("family", family)
        .with_param("skipped", self.skipped)
        .with_param("uniform_mass", self.uniform_mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemma::rects::RectangleFamily;
    use crate::rng::master;

    fn exact_config(len: usize, b: f64, s: f64, delta: f64) -> SkewCheckConfig {
        SkewCheckConfig {
            len,
            b,
            s,
            delta,
            mode: SkewMode::Exact,
            samples: 0,
        }
    }

    #[test]
    fn full_space_gives_cosh_bound() {
        // Both correlated measures of the full space are 1, so the left side
        // is cosh(s) ≥ 1 ≥ 2/3.
        let mut rng = master(181);
        for &s in &[-3.0, -1.0, 0.0, 1.0, 3.0] {
            let cfg = exact_config(10, 10.0, s, 0.1);
            let outcome =
                skewed_anticoncentration_check(&cfg, &Rectangle::full(1 << 10), &mut rng)
                    .unwrap();
            assert!(!outcome.skipped);
            assert!((outcome.lhs - s.cosh()).abs() < 1e-9);
            assert!((outcome.rhs - 2.0 / 3.0).abs() < 1e-12);
            assert!(outcome.holds);
        }
    }

    #[test]
    fn small_rectangles_are_skipped_not_failed() {
        let mut rng = master(182);
        let cfg = exact_config(10, 10.0, 1.0, 0.1);
        // A singleton × singleton rectangle is far below 2^{-δN}.
        let mut a = vec![false; 1 << 10];
        a[3] = true;
        let rect = Rectangle::new(
            crate::protocol::rectangle::Side::bits(a.clone()),
            crate::protocol::rectangle::Side::bits(a),
        );
        let outcome = skewed_anticoncentration_check(&cfg, &rect, &mut rng).unwrap();
        assert!(outcome.skipped);
        assert!(outcome.holds);
    }

    #[test]
    fn unskewed_sweep_finds_no_violations() {
        let mut rng = master(183);
        let cfg = exact_config(10, 8.0, 0.0, 0.1);
        let mut checked = 0;
        for _ in 0..50 {
            let rects = RectangleFamily::RandomDensity { density: 0.8 }
                .generate(10, &mut rng)
                .unwrap();
            for rect in rects {
                let outcome = skewed_anticoncentration_check(&cfg, &rect, &mut rng).unwrap();
                if !outcome.skipped {
                    checked += 1;
                    assert!(outcome.holds, "margin {}", outcome.margin);
                }
            }
        }
        assert!(checked > 20, "only {checked} rectangles were large enough");
    }

    #[test]
    fn monte_carlo_mode_matches_exact_within_allowance() {
        let mut rng = master(184);
        let rect = RectangleFamily::Threshold { threshold: -2 }
            .generate(10, &mut rng)
            .unwrap()
            .remove(0);
        let exact_outcome = skewed_anticoncentration_check(
            &exact_config(10, 4.0, 1.0, 0.1),
            &rect,
            &mut rng,
        )
        .unwrap();
        let mc_cfg = SkewCheckConfig {
            mode: SkewMode::MonteCarlo,
            samples: 200_000,
            ..exact_config(10, 4.0, 1.0, 0.1)
        };
        let mc_outcome = skewed_anticoncentration_check(&mc_cfg, &rect, &mut rng).unwrap();
        assert!(mc_outcome.holds);
        assert!(
            (mc_outcome.lhs - exact_outcome.lhs).abs() < 5.0 * mc_outcome.tolerance.max(1e-4),
            "mc {} exact {}",
            mc_outcome.lhs,
            exact_outcome.lhs
        );
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let mut rng = master(185);
        let rect = Rectangle::full(4);
        for cfg in [
            exact_config(2, 0.0, 0.0, 0.1),
            exact_config(2, 1.0, 0.0, 0.0),
            exact_config(2, 9.0, 0.0, 0.1),
        ] {
            assert!(skewed_anticoncentration_check(&cfg, &rect, &mut rng).is_err());
        }
    }
}
