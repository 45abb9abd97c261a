//! The sampled-positions tester for gap orthogonality.
//!
//! Probe `k` coordinates of the two strings, uniformly with replacement, and
//! accept when all probed pairs agree or all disagree. If the strings agree
//! on a fraction `a` of coordinates, the acceptance probability is exactly
//! `a^k + (1−a)^k`; for `k = √N` and strings differing on a
//! `1/2 + Δ/√N` fraction this is approximately `2^{1−√N} cosh(2Δ)`.

use super::query::{run_distributed, QueryAlgorithm};
use crate::math::sign::SignVector;
use crate::math::MathError;
use crate::protocol::run::ProtocolRun;
use rand::Rng;

/// The tester as a query algorithm: `queries` probes over a length-`len`
/// string, accepting iff all answers are equal.
pub struct SqrtSampler {
    len: usize,
    queries: usize,
}

impl SqrtSampler {
    pub fn new(len: usize, queries: usize) -> Result<Self, MathError> {
        if queries == 0 {
            return Err(MathError::OutOfDomain {
                name: "queries",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        Ok(SqrtSampler { len, queries })
    }
}

impl QueryAlgorithm for SqrtSampler {
    type Output = bool;

    fn run<R: Rng + ?Sized>(&self, oracle: &mut dyn FnMut(usize) -> i8, rng: &mut R) -> bool {
        let first = oracle(rng.gen_range(0..self.len));
        for _ in 1..self.queries {
            if oracle(rng.gen_range(0..self.len)) != first {
                return false;
            }
        }
        true
    }
}

/// One distributed run: accept bit plus the 2-bits-per-query transcript.
///
/// Early exit on a mismatched probe is deliberately not taken distributively:
/// all `k` positions are queried so the cost is always `2k` bits.
pub fn sqrt_sampler<R: Rng + ?Sized>(
    x: &SignVector,
    y: &SignVector,
    queries: usize,
    rng: &mut R,
) -> Result<ProtocolRun<bool>, MathError> {
    let sampler = FixedCostSampler(SqrtSampler::new(x.len(), queries)?);
    run_distributed(&sampler, x, y, rng)
}

/// Wrapper that always issues every query, keeping the bit cost constant.
struct FixedCostSampler(SqrtSampler);

impl QueryAlgorithm for FixedCostSampler {
    type Output = bool;

    fn run<R: Rng + ?Sized>(&self, oracle: &mut dyn FnMut(usize) -> i8, rng: &mut R) -> bool {
        let mut all_equal = true;
        let mut first = 0i8;
        for q in 0..self.0.queries {
            let answer = oracle(rng.gen_range(0..self.0.len));
            if q == 0 {
                first = answer;
            } else if answer != first {
                all_equal = false;
            }
        }
        all_equal
    }
}

/// Exact acceptance probability when the strings agree on a fraction
/// `agree_fraction` of coordinates.
pub fn sqrt_sampler_exact_prob(agree_fraction: f64, queries: usize) -> f64 {
    let a = agree_fraction;
    a.powi(queries as i32) + (1.0 - a).powi(queries as i32)
}

/// The asymptotic approximation `2^{1−√N} cosh(2Δ)` for `√N` probes of
/// strings differing on a `1/2 + Δ/√N` fraction.
pub fn cosh_acceptance_approximation(len: usize, delta: f64) -> f64 {
    let root = (len as f64).sqrt();
    2f64.powf(1.0 - root) * (2.0 * delta).cosh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master;

    #[test]
    fn identical_strings_always_accept() {
        let mut rng = master(141);
        let x = SignVector::random(32, &mut rng);
        for _ in 0..100 {
            let run = sqrt_sampler(&x, &x, 5, &mut rng).unwrap();
            assert!(run.output);
            assert_eq!(run.bits_sent(), 10);
        }
        assert_eq!(sqrt_sampler_exact_prob(1.0, 5), 1.0);
    }

    #[test]
    fn negated_strings_always_accept() {
        let mut rng = master(142);
        let x = SignVector::random(32, &mut rng);
        let y = x.negated();
        for _ in 0..100 {
            assert!(sqrt_sampler(&x, &y, 5, &mut rng).unwrap().output);
        }
        assert_eq!(sqrt_sampler_exact_prob(0.0, 5), 1.0);
    }

    #[test]
    fn half_agreement_two_probes() {
        // Exact probability (1/2)² + (1/2)² = 1/2, which the asymptotic
        // formula also gives at N = 4, Δ = 0.
        assert_eq!(sqrt_sampler_exact_prob(0.5, 2), 0.5);
        assert!((cosh_acceptance_approximation(4, 0.0) - 0.5).abs() < 1e-15);

        let x = SignVector::new(vec![1, 1, 1, 1]).unwrap();
        let y = SignVector::new(vec![1, 1, -1, -1]).unwrap();
        let mut rng = master(143);
        let trials = 100_000u64;
        let accepts = (0..trials)
            .filter(|_| sqrt_sampler(&x, &y, 2, &mut rng).unwrap().output)
            .count() as f64;
        let rate = accepts / trials as f64;
        let sigma = (0.5f64 * 0.5 / trials as f64).sqrt();
        assert!((rate - 0.5).abs() < 3.0 * sigma, "rate {rate}");
    }

    #[test]
    fn empirical_rate_matches_exact_probability() {
        let mut rng = master(144);
        let len = 64;
        let x = SignVector::random(len, &mut rng);
        let y = SignVector::random(len, &mut rng);
        let agree = x.agreements(&y).unwrap() as f64 / len as f64;
        let k = 8;
        let exact = sqrt_sampler_exact_prob(agree, k);
        let trials = 100_000u64;
        let accepts = (0..trials)
            .filter(|_| sqrt_sampler(&x, &y, k, &mut rng).unwrap().output)
            .count() as f64;
        let rate = accepts / trials as f64;
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (rate - exact).abs() < 3.0 * sigma.max(1e-4),
            "rate {rate} exact {exact}"
        );
    }

    #[test]
    fn rejects_zero_queries() {
        assert!(SqrtSampler::new(8, 0).is_err());
    }
}
