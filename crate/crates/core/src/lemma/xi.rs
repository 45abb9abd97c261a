//! The correlated sign-pair distribution family and its exactly computable
//! laws.
//!
//! A pair `(x, y)` over `{±1}^N` is drawn by taking `x` uniform and setting
//! `y_i = x_i` with probability `(1 + p)/2` independently. The inner product
//! `⟨x, y⟩` then follows a shifted binomial law; everything in this module —
//! the overlap pmf, the mean squared overlap, the padded variant, the shift
//! map, and the ratio against the uniform law in doubled length — reduces to
//! that binomial, evaluated in log space so lengths in the thousands stay
//! finite.

use super::LemmaError;
use crate::math::sign::{correlated_pair, SignVector};
use crate::math::special::ln_binomial;
use crate::math::MathError;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiParams {
    pub len: usize,
    pub correlation: f64,
}

impl XiParams {
    pub fn new(len: usize, correlation: f64) -> Result<Self, LemmaError> {
        if len == 0 {
            return Err(LemmaError::Math(MathError::EmptyVector));
        }
        if !(-1.0..=1.0).contains(&correlation) {
            return Err(LemmaError::Math(MathError::OutOfDomain {
                name: "p",
                value: correlation,
                min: -1.0,
                max: 1.0,
            }));
        }
        Ok(XiParams { len, correlation })
    }
}

/// Draws one pair.
pub fn xi_sample<R: Rng + ?Sized>(
    params: XiParams,
    rng: &mut R,
) -> (SignVector, SignVector) {
    correlated_pair(params.len, params.correlation, rng).expect("validated params")
}

/// Exact pmf of `⟨x, y⟩ = delta`:
/// `C(N, k) ((1+p)/2)^k ((1−p)/2)^{N−k}` with `k = (N + delta)/2` agreements.
/// Zero off the parity-correct support.
pub fn xi_overlap_pmf(len: usize, p: f64, delta: i64) -> f64 {
    let n = len as i64;
    if delta.abs() > n || (n + delta) % 2 != 0 {
        return 0.0;
    }
    let k = ((n + delta) / 2) as u64;
    let agreements_needed = k;
    let disagreements = len as u64 - k;
    if p == 1.0 {
        return if disagreements == 0 { 1.0 } else { 0.0 };
    }
    if p == -1.0 {
        return if agreements_needed == 0 { 1.0 } else { 0.0 };
    }
    let ln_agree = ((1.0 + p) / 2.0).ln();
    let ln_disagree = ((1.0 - p) / 2.0).ln();
    (ln_binomial(len as u64, k) + k as f64 * ln_agree + disagreements as f64 * ln_disagree).exp()
}

/// The parity-correct support of the overlap, `{-N, -N+2, …, N}`.
pub fn overlap_support(len: usize) -> impl Iterator<Item = i64> {
    let n = len as i64;
    (-n..=n).step_by(2)
}

/// Closed form of the mean squared normalized overlap,
/// `E (⟨x,y⟩/N)² = 1/N + (1 − 1/N) p²`.
pub fn expected_squared_overlap(len: usize, p: f64) -> f64 {
    let n = len as f64;
    1.0 / n + (1.0 - 1.0 / n) * p * p
}

/// Independent route: the same expectation as the pmf-weighted sum
/// `Σ_Δ (Δ/N)² · pmf(Δ)`.
pub fn expected_squared_overlap_from_pmf(len: usize, p: f64) -> f64 {
    overlap_support(len)
        .map(|delta| {
            let r = delta as f64 / len as f64;
            r * r * xi_overlap_pmf(len, p, delta)
        })
        .sum()
}

/// The per-coordinate shift map: with probability `q`, replace `(x_i, y_i)`
/// by an equal pair with a fresh uniform sign. Pairs distributed with
/// correlation `p` come out with correlation `p + q − pq`.
pub fn shift_pairs<R: Rng + ?Sized>(
    x: &SignVector,
    y: &SignVector,
    q: f64,
    rng: &mut R,
) -> Result<(SignVector, SignVector), LemmaError> {
    if x.len() != y.len() {
        return Err(LemmaError::Math(MathError::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        }));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(LemmaError::Math(MathError::OutOfDomain {
            name: "q",
            value: q,
            min: 0.0,
            max: 1.0,
        }));
    }
    let mut xs = Vec::with_capacity(x.len());
    let mut ys = Vec::with_capacity(y.len());
    for i in 0..x.len() {
        if rng.gen::<f64>() < q {
            let b: i8 = if rng.gen::<bool>() { 1 } else { -1 };
            xs.push(b);
            ys.push(b);
        } else {
            xs.push(x.get(i));
            ys.push(y.get(i));
        }
    }
    Ok((SignVector::new(xs)?, SignVector::new(ys)?))
}

/// Shifted correlation `p + q − pq`.
pub fn shifted_correlation(p: f64, q: f64) -> f64 {
    p + q - p * q
}

/// Exact-arithmetic semigroup check for the shift map: shifting by `q1` then
/// `q2` must equal the single shift by `q1 + q2 − q1·q2`, at the level of
/// per-coordinate agreement probabilities. Returns the two agreement
/// probabilities (sequential, direct) and whether they are identical.
pub fn shift_semigroup_exact(
    p: &BigRational,
    q1: &BigRational,
    q2: &BigRational,
) -> (BigRational, BigRational, bool) {
    let one = BigRational::from(BigInt::from(1));
    let two = BigRational::from(BigInt::from(2));
    let agree = |corr: &BigRational| (&one + corr) / &two;
    let shift = |a: &BigRational, q: &BigRational| q + (&one - q) * a;
    let sequential = shift(&shift(&agree(p), q1), q2);
    let q = q1 + q2 - q1 * q2;
    let direct = shift(&agree(p), &q);
    let equal = sequential == direct;
    (sequential, direct, equal)
}

/// Fixed padding pair of even length: all-ones against the half-and-half
/// string, agreeing on exactly half the coordinates (inner product zero).
pub fn zero_overlap_pad(len: usize) -> Result<(SignVector, SignVector), LemmaError> {
    if len % 2 != 0 {
        return Err(LemmaError::OddLength { len });
    }
    let x = SignVector::ones(len);
    let mut tail = vec![1i8; len / 2];
    tail.extend(std::iter::repeat(-1).take(len / 2));
    Ok((x, SignVector::new(tail)?))
}

/// One draw of the padded pair: a correlated pair of length `N` concatenated
/// with the zero-overlap pad, then one random permutation applied to both
/// strings. Length `N` must be even.
///
/// The pad is used with a uniformly random global sign. Flipping both pad
/// strings together preserves their zero inner product — so the overlap law
/// is exactly the unpadded one — while making every coordinate marginally
/// uniform (the fixed pad alone would bias the coordinates it lands on).
pub fn xi_prime_sample<R: Rng + ?Sized>(
    params: XiParams,
    rng: &mut R,
) -> Result<(SignVector, SignVector), LemmaError> {
    let (mut pad_x, mut pad_y) = zero_overlap_pad(params.len)?;
    if rng.gen::<bool>() {
        pad_x = pad_x.negated();
        pad_y = pad_y.negated();
    }
    let (x, y) = xi_sample(params, rng);
    let full_x = x.concat(&pad_x);
    let full_y = y.concat(&pad_y);
    let mut perm: Vec<usize> = (0..2 * params.len).collect();
    // Fisher-Yates.
    for i in (1..perm.len()).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    Ok((full_x.permuted(&perm), full_y.permuted(&perm)))
}

/// Overlap pmf of the padded pair, derived by convolving the unpadded law
/// with the pad's (deterministic, zero) overlap contribution. Exactly equal
/// to [`xi_overlap_pmf`] value-for-value: the permutation preserves the
/// inner product and the pad adds zero.
pub fn xi_prime_overlap_pmf(len: usize, p: f64, delta: i64) -> Result<f64, LemmaError> {
    if len % 2 != 0 {
        return Err(LemmaError::OddLength { len });
    }
    // The pad's overlap law is a point mass at zero.
    let pad_law = [(0i64, 1.0f64)];
    Ok(pad_law
        .iter()
        .map(|&(pad_delta, mass)| mass * xi_overlap_pmf(len, p, delta - pad_delta))
        .sum())
}

/// Overlap pmf of the uniform distribution on `{±1}^{2N}` pairs:
/// `2^{-2N} C(2N, N + Δ/2)`; zero for odd `Δ`.
pub fn uniform_doubled_overlap_pmf(len: usize, delta: i64) -> f64 {
    let doubled = 2 * len as i64;
    if delta.abs() > doubled || delta % 2 != 0 {
        return 0.0;
    }
    let k = (len as i64 + delta / 2) as u64;
    (ln_binomial(2 * len as u64, k) - 2.0 * len as f64 * std::f64::consts::LN_2).exp()
}

/// Outcome of comparing the padded overlap law against the uniform law in
/// doubled length at one overlap value.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OverlapRatio {
    pub delta: i64,
    pub ratio: f64,
    /// The comparison's hypothesis is `|p| ≤ 0.01`; larger `p` is allowed
    /// but flagged.
    pub within_hypothesis: bool,
}

/// The ratio `Pr_padded[⟨x',y'⟩ = Δ] / (e^{2p²N} · Pr_uniform,2N[Δ])`,
/// finite on the padded law's support.
pub fn padded_overlap_ratio(len: usize, p: f64, delta: i64) -> Result<OverlapRatio, LemmaError> {
    if len % 2 != 0 {
        return Err(LemmaError::OddLength { len });
    }
    let numerator = xi_prime_overlap_pmf(len, p, delta)?;
    let denominator = uniform_doubled_overlap_pmf(len, delta);
    let scale = (2.0 * p * p * len as f64).exp();
    let ratio = if numerator == 0.0 {
        0.0
    } else {
        numerator / (scale * denominator)
    };
    Ok(OverlapRatio {
        delta,
        ratio,
        within_hypothesis: p.abs() <= 0.01,
    })
}

/// Sweeps the ratio over the full support and returns the maximum.
pub fn padded_overlap_ratio_max(len: usize, p: f64) -> Result<OverlapRatio, LemmaError> {
    let mut best = OverlapRatio {
        delta: 0,
        ratio: f64::NEG_INFINITY,
        within_hypothesis: p.abs() <= 0.01,
    };
    for delta in overlap_support(len) {
        let r = padded_overlap_ratio(len, p, delta)?;
        if r.ratio > best.ratio {
            best = r;
        }
    }
    Ok(best)
}
