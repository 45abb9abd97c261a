//! Vectors over {−1, +1}: function tables and protocol inputs.

use super::MathError;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A vector with entries in {−1, +1}.
///
/// Doubles as the truth table of a function `{0,1}^n → {±1}` (length `2^n`,
/// entry `x` holds the value at the bit string `x`) and as a party's input
/// string of arbitrary length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector {
    entries: Vec<i8>,
}

impl SignVector {
    /// Validates that every entry is ±1 and the vector is non-empty.
    pub fn new(entries: Vec<i8>) -> Result<Self, MathError> {
        if entries.is_empty() {
            return Err(MathError::EmptyVector);
        }
        for (index, &value) in entries.iter().enumerate() {
            if value != 1 && value != -1 {
                return Err(MathError::InvalidSign { index, value });
            }
        }
        Ok(SignVector { entries })
    }

    /// All-ones vector of the given length.
    pub fn ones(len: usize) -> Self {
        SignVector {
            entries: vec![1; len],
        }
    }

    /// Uniformly random vector of the given length.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let entries = (0..len)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        SignVector { entries }
    }

    /// Decodes the hypercube index convention: bit `i` of `pattern` set means
    /// entry `i` is −1.
    pub fn from_index(pattern: u64, len: usize) -> Self {
        let entries = (0..len)
            .map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        SignVector { entries }
    }

    /// Inverse of [`SignVector::from_index`]; only defined for length ≤ 63.
    pub fn to_index(&self) -> u64 {
        debug_assert!(self.len() <= 63);
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == -1)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> i8 {
        self.entries[i]
    }

    /// `Σ_i x_i y_i`. Lies in `[-N, N]` with the parity of `N`.
    pub fn inner_product(&self, other: &SignVector) -> Result<i64, MathError> {
        if self.len() != other.len() {
            return Err(MathError::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a as i64) * (b as i64))
            .sum())
    }

    /// Number of coordinates where the two vectors agree.
    pub fn agreements(&self, other: &SignVector) -> Result<usize, MathError> {
        let ip = self.inner_product(other)?;
        Ok(((self.len() as i64 + ip) / 2) as usize)
    }

    /// Entrywise product; the table of `fg` when both are function tables.
    pub fn pointwise_product(&self, other: &SignVector) -> Result<SignVector, MathError> {
        if self.len() != other.len() {
            return Err(MathError::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a * b)
            .collect();
        Ok(SignVector { entries })
    }

    pub fn negated(&self) -> SignVector {
        SignVector {
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    /// Concatenation of two vectors.
    pub fn concat(&self, tail: &SignVector) -> SignVector {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&tail.entries);
        SignVector { entries }
    }

    /// Reorders entries as `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> SignVector {
        debug_assert_eq!(perm.len(), self.len());
        SignVector {
            entries: perm.iter().map(|&j| self.entries[j]).collect(),
        }
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = MathError;

    fn try_from(entries: Vec<i8>) -> Result<Self, MathError> {
        SignVector::new(entries)
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(v: SignVector) -> Vec<i8> {
        v.entries
    }
}

/// Draws a pair `(x, y)` with `x` uniform and, independently per coordinate,
/// `y_i = x_i` with probability `(1 + p) / 2`.
///
/// This is the correlated Rademacher pair distribution used throughout the
/// rectangle-measure checks; `p = 0` gives two independent uniform strings,
/// `p = ±1` forces `y = ±x`.
pub fn correlated_pair<R: Rng + ?Sized>(
    len: usize,
    p: f64,
    rng: &mut R,
) -> Result<(SignVector, SignVector), MathError> {
    if !(-1.0..=1.0).contains(&p) {
        return Err(MathError::OutOfDomain {
            name: "p",
            value: p,
            min: -1.0,
            max: 1.0,
        });
    }
    if len == 0 {
        return Err(MathError::EmptyVector);
    }
    let agree = (1.0 + p) / 2.0;
    let mut xs = Vec::with_capacity(len);
    let mut ys = Vec::with_capacity(len);
    for _ in 0..len {
        let x: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        let y = if rng.gen::<f64>() < agree { x } else { -x };
        xs.push(x);
        ys.push(y);
    }
    Ok((SignVector { entries: xs }, SignVector { entries: ys }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master;

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            SignVector::new(vec![1, 0, -1]),
            Err(MathError::InvalidSign { index: 1, value: 0 })
        ));
        assert!(matches!(
            SignVector::new(vec![]),
            Err(MathError::EmptyVector)
        ));
    }

    #[test]
    fn inner_product_parity_and_range() {
        let mut rng = master(11);
        for _ in 0..50 {
            let x = SignVector::random(9, &mut rng);
            let y = SignVector::random(9, &mut rng);
            let ip = x.inner_product(&y).unwrap();
            assert!(ip.abs() <= 9);
            assert_eq!(ip.rem_euclid(2), 9 % 2);
        }
    }

    #[test]
    fn index_round_trip() {
        for pattern in 0..32u64 {
            let v = SignVector::from_index(pattern, 5);
            assert_eq!(v.to_index(), pattern);
        }
    }

    #[test]
    fn correlated_pair_extremes() {
        let mut rng = master(3);
        let (x, y) = correlated_pair(16, 1.0, &mut rng).unwrap();
        assert_eq!(x, y);
        let (x, y) = correlated_pair(16, -1.0, &mut rng).unwrap();
        assert_eq!(x.negated(), y);
    }

    #[test]
    fn correlated_pair_agreement_rate() {
        // 10^5 coordinate draws at p = 0.4: agreement should be 0.7 within 3σ.
        let mut rng = master(5);
        let mut agree = 0u64;
        let n = 100_000;
        for _ in 0..n / 10 {
            let (x, y) = correlated_pair(10, 0.4, &mut rng).unwrap();
            agree += x.agreements(&y).unwrap() as u64;
        }
        let rate = agree as f64 / n as f64;
        let sigma = (0.7f64 * 0.3 / n as f64).sqrt();
        assert!((rate - 0.7).abs() < 3.0 * sigma, "rate {rate}");
    }

    #[test]
    fn serde_rejects_invalid() {
        let ok: Result<SignVector, _> = serde_json::from_str("[1,-1,1]");
        assert!(ok.is_ok());
        let bad: Result<SignVector, _> = serde_json::from_str("[1,2]");
        assert!(bad.is_err());
    }
}
