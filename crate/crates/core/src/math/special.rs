//! Scalar analytic helpers: binary entropy, log-binomials, and the
//! entropy-form binomial coefficient bounds.

use super::MathError;

/// Binary entropy in nats, `h(x) = −x ln x − (1−x) ln(1−x)`.
///
/// Endpoints return 0 by continuity; arguments outside `[0, 1]` are a domain
/// error.
pub fn binary_entropy(x: f64) -> Result<f64, MathError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(MathError::OutOfDomain {
            name: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (1.0 - x).ln())
}

/// `ln C(n, k)` by direct log summation; exact to ~1e-13 absolute for
/// `n ≤ 10^4`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut acc = 0.0;
    for i in 1..=k {
        acc += ((n - k + i) as f64).ln() - (i as f64).ln();
    }
    acc
}

/// `C(n, k)` as an `f64`; exact for values below 2^53, correctly rounded
/// close to it.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 1..=k {
        acc = acc * (n - k + i) as f64 / i as f64;
    }
    acc
}

/// Outcome of checking the entropy-form bounds
/// `√(N / (8 k (N−k))) e^{N h(k/N)} ≤ C(N,k) ≤ √(N / (2π k (N−k))) e^{N h(k/N)}`
/// at one `(N, k)`.
#[derive(Debug, Clone, Copy)]
pub struct BinomialBoundCheck {
    pub lower: f64,
    pub exact: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Evaluates both bounds and the exact coefficient in log space.
///
/// `k` must lie in `[1, N−1]` and `N ≤ 10^3`. The comparison allows `1e-12`
/// slack in log space: the lower bound is attained exactly at `N = 2, k = 1`,
/// and a bit-level comparison there would be decided by rounding noise.
pub fn check_binomial_bounds(n: u64, k: u64) -> Result<BinomialBoundCheck, MathError> {
    if n < 2 || n > 1000 {
        return Err(MathError::OutOfDomain {
            name: "N",
            value: n as f64,
            min: 2.0,
            max: 1000.0,
        });
    }
    if k < 1 || k > n - 1 {
        return Err(MathError::OutOfDomain {
            name: "k",
            value: k as f64,
            min: 1.0,
            max: (n - 1) as f64,
        });
    }
    let nf = n as f64;
    let kf = k as f64;
    let entropy_term = nf * binary_entropy(kf / nf)?;
    let ln_lower = 0.5 * (nf / (8.0 * kf * (nf - kf))).ln() + entropy_term;
    let ln_upper = 0.5 * (nf / (2.0 * std::f64::consts::PI * kf * (nf - kf))).ln() + entropy_term;
    let ln_exact = ln_binomial(n, k);
    let holds = ln_lower <= ln_exact + 1e-12 && ln_exact <= ln_upper + 1e-12;
    Ok(BinomialBoundCheck {
        lower: ln_lower.exp(),
        exact: ln_exact.exp(),
        upper: ln_upper.exp(),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_maximum_and_endpoints() {
        assert!((binary_entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn entropy_quarter_matches_direct_formula() {
        let direct = -0.25f64 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert!((binary_entropy(0.25).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn binomials_are_exact_for_small_arguments() {
        assert_eq!(binomial(10, 5), 252.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert!((ln_binomial(10, 5) - 252f64.ln()).abs() < 1e-12);
        assert_eq!(binomial(5, 9), 0.0);
    }

    #[test]
    fn bounds_at_ten_choose_five() {
        let check = check_binomial_bounds(10, 5).unwrap();
        assert!(check.holds);
        assert!((check.exact - 252.0).abs() < 1e-9);
        assert!((check.lower - 228.9735).abs() < 1e-3, "lower {}", check.lower);
        assert!((check.upper - 258.3691).abs() < 1e-3, "upper {}", check.upper);
    }

    #[test]
    fn lower_bound_is_tight_at_two_choose_one() {
        let check = check_binomial_bounds(2, 1).unwrap();
        assert!(check.holds);
        assert!((check.exact - 2.0).abs() < 1e-12);
        assert!((check.lower - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_hold_on_full_sweep() {
        for n in 2..=200u64 {
            for k in 1..n {
                assert!(
                    check_binomial_bounds(n, k).unwrap().holds,
                    "violated at N={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn rejects_out_of_range_k() {
        assert!(check_binomial_bounds(10, 0).is_err());
        assert!(check_binomial_bounds(10, 10).is_err());
    }
}
