//! The entropy-difference function behind the binomial ratio bound.
//!
//! `F(x) = ln 2 + h(x + 1/2) − 2 h(x/2 + 1/2)` on `[0, 1/2)`, with `h` the
//! binary entropy in nats. The claims checked here: `F(x) ≤ −x²`, and the
//! closed-form second derivative
//!
//! ```text
//! F″(x) = −(2 + 4x²) / (1 − 5x² + 4x⁴)
//! ```
//!
//! stays strictly below −2 away from the left endpoint (at `x = 0` it equals
//! −2 exactly; records flag that point as the boundary).
//!
//! The finite-difference cross-check differentiates the closed-form first
//! derivative `F′(x) = ln((1−2x)/(1+2x)) − ln((1−x)/(1+x))`: a second
//! difference of `F` itself cannot reach the required `1e-6` in doubles near
//! `x = 1/2`, where the fourth derivative blows up, while the first
//! difference of `F′` stays accurate on the whole grid. `F′` is in turn
//! checked against a first difference of `F`.

use super::LemmaError;
use crate::math::special::binary_entropy;
use crate::math::MathError;
use serde::{Deserialize, Serialize};

/// Step for differencing `F` (checks `F′`).
const H_FIRST: f64 = 1e-6;
/// Step for differencing `F′` (checks `F″`).
const H_SECOND: f64 = 1e-8;

/// Slack on the `F(x) ≤ −x²` comparison.
pub const BOUND_TOL: f64 = 1e-12;

/// Agreement required between closed forms and finite differences.
pub const FD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FFunctionRecord {
    pub x: f64,
    pub f: f64,
    pub f_prime: f64,
    pub f_second: f64,
    /// Central difference of `F` at step 1e-6.
    pub f_prime_fd: f64,
    /// Central difference of `F′` at step 1e-8.
    pub f_second_fd: f64,
    /// `F(x) ≤ −x² + 1e-12` and `F″(x) < −2`.
    pub bound_holds: bool,
    /// True at `x = 0`, where `F″ = −2` exactly and the strict form is not
    /// claimed.
    pub boundary: bool,
}

/// `F(x)` itself.
pub fn f_function(x: f64) -> Result<f64, LemmaError> {
    check_domain(x)?;
    Ok(std::f64::consts::LN_2 + binary_entropy(x + 0.5)? - 2.0 * binary_entropy(x / 2.0 + 0.5)?)
}

/// Closed-form `F′(x)`.
pub fn f_prime(x: f64) -> Result<f64, LemmaError> {
    check_domain(x)?;
    Ok(((1.0 - 2.0 * x) / (1.0 + 2.0 * x)).ln() - ((1.0 - x) / (1.0 + x)).ln())
}

/// Closed-form `F″(x)`.
pub fn f_second(x: f64) -> Result<f64, LemmaError> {
    check_domain(x)?;
    let x2 = x * x;
    Ok(-(2.0 + 4.0 * x2) / (1.0 - 5.0 * x2 + 4.0 * x2 * x2))
}

fn check_domain(x: f64) -> Result<(), LemmaError> {
    if !(0.0..0.5).contains(&x) {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "x",
            value: x,
            min: 0.0,
            max: 0.5,
        }));
    }
    Ok(())
}

/// Evaluates every closed form, the finite-difference cross-checks, and the
/// claimed bounds at one point.
pub fn f_function_checks(x: f64) -> Result<FFunctionRecord, LemmaError> {
    check_domain(x)?;
    let f = f_function(x)?;
    let prime = f_prime(x)?;
    let second = f_second(x)?;
    let f_prime_fd = if x >= H_FIRST {
        (f_function(x + H_FIRST)? - f_function(x - H_FIRST)?) / (2.0 * H_FIRST)
    } else {
        // One-sided at the left endpoint.
        (f_function(x + H_FIRST)? - f) / H_FIRST
    };
    let f_second_fd = if x >= H_SECOND {
        (f_prime(x + H_SECOND)? - f_prime(x - H_SECOND)?) / (2.0 * H_SECOND)
    } else {
        (f_prime(x + H_SECOND)? - prime) / H_SECOND
    };
    let boundary = x == 0.0;
    let bound_holds = f <= -x * x + BOUND_TOL && second < -2.0;
    Ok(FFunctionRecord {
        x,
        f,
        f_prime: prime,
        f_second: second,
        f_prime_fd,
        f_second_fd,
        bound_holds,
        boundary,
    })
}

/// Sweeps `(0, 0.499]` at the given step; returns the records.
pub fn f_function_grid(step: f64) -> Result<Vec<FFunctionRecord>, LemmaError> {
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let x = k as f64 * step;
        if x > 0.499 {
            break;
        }
        out.push(f_function_checks(x)?);
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_endpoint_is_the_boundary_case() {
        let rec = f_function_checks(0.0).unwrap();
        assert!(rec.f.abs() < 1e-15);
        assert_eq!(rec.f_second, -2.0);
        assert!(rec.boundary);
        // The strict inequality fails only through the boundary flag.
        assert!(!rec.bound_holds);
        assert!(rec.f_prime.abs() < 1e-15);
    }

    #[test]
    fn interior_point_satisfies_both_bounds() {
        let rec = f_function_checks(0.3).unwrap();
        assert!(rec.f <= -0.09);
        assert!(rec.f_second < -2.0);
        assert!(rec.bound_holds);
        assert!(!rec.boundary);
    }

    #[test]
    fn closed_forms_match_finite_differences_on_the_grid() {
        for rec in f_function_grid(1e-3).unwrap() {
            assert!(
                (rec.f_prime - rec.f_prime_fd).abs() < FD_TOL,
                "x={} prime {} fd {}",
                rec.x,
                rec.f_prime,
                rec.f_prime_fd
            );
            assert!(
                (rec.f_second - rec.f_second_fd).abs() < FD_TOL,
                "x={} second {} fd {}",
                rec.x,
                rec.f_second,
                rec.f_second_fd
            );
        }
    }

    #[test]
    fn bounds_hold_on_the_fine_grid() {
        for rec in f_function_grid(1e-4).unwrap() {
            assert!(rec.bound_holds, "x={} f={} f''={}", rec.x, rec.f, rec.f_second);
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(f_function_checks(0.5).is_err());
        assert!(f_function_checks(-0.1).is_err());
    }
}
