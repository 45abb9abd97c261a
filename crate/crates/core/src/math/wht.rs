//! Walsh–Hadamard transform over `Z_2^n` and the XOR convolution built on it.

use super::sign::SignVector;
use super::MathError;

/// In-place unnormalized Walsh–Hadamard butterfly.
///
/// Replaces `data` with `out[s] = Σ_x (−1)^{s·x} data[x]`, where `s·x` is the
/// mod-2 dot product of the little-endian bit expansions. `O(N log N)`.
/// Applying it twice multiplies the input by `N`.
pub fn wht_inplace(data: &mut [f64]) {
    debug_assert!(data.len().is_power_of_two());
    let n = data.len();
    let mut half = 1;
    while half < n {
        for block in (0..n).step_by(half * 2) {
            for i in block..block + half {
                let (a, b) = (data[i], data[i + half]);
                data[i] = a + b;
                data[i + half] = a - b;
            }
        }
        half *= 2;
    }
}

/// Fourier coefficients of a ±1 function table of length `2^n`:
/// `ĥ(s) = 2^{-n} Σ_x (−1)^{s·x} h(x)`.
///
/// For ±1 tables the coefficients satisfy Parseval's identity
/// `Σ_s ĥ(s)² = 1`.
pub fn walsh_hadamard(table: &SignVector) -> Result<Vec<f64>, MathError> {
    let n = table.len();
    if !n.is_power_of_two() {
        return Err(MathError::NotPowerOfTwo { len: n });
    }
    let mut data: Vec<f64> = table.entries().iter().map(|&e| e as f64).collect();
    wht_inplace(&mut data);
    let scale = 1.0 / n as f64;
    for v in &mut data {
        *v *= scale;
    }
    Ok(data)
}

/// XOR convolution `out[z] = Σ_{x ⊕ y = z} a[x] b[y]` via three transforms.
///
/// For integer-valued inputs whose convolution stays below 2^53 the result is
/// exact: every intermediate value is an integer representable in an `f64`.
pub fn xor_convolve(a: &[f64], b: &[f64]) -> Result<Vec<f64>, MathError> {
    if a.len() != b.len() {
        return Err(MathError::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if !a.len().is_power_of_two() {
        return Err(MathError::NotPowerOfTwo { len: a.len() });
    }
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    wht_inplace(&mut fa);
    wht_inplace(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    wht_inplace(&mut fa);
    let scale = 1.0 / a.len() as f64;
    for v in &mut fa {
        *v *= scale;
    }
    Ok(fa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master;

    /// O(4^n) double-loop evaluation of the transform, kept as an oracle.
    fn naive_wht(table: &SignVector) -> Vec<f64> {
        let n = table.len();
        (0..n)
            .map(|s| {
                (0..n)
                    .map(|x| {
                        let sign = if (s & x).count_ones() % 2 == 1 {
                            -1.0
                        } else {
                            1.0
                        };
                        sign * table.get(x) as f64
                    })
                    .sum::<f64>()
                    / n as f64
            })
            .collect()
    }

    #[test]
    fn constant_function_concentrates_at_zero() {
        let h = SignVector::new(vec![1, 1, 1, 1]).unwrap();
        let coeffs = walsh_hadamard(&h).unwrap();
        assert_eq!(coeffs, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn one_bit_parity() {
        let h = SignVector::new(vec![1, -1]).unwrap();
        let coeffs = walsh_hadamard(&h).unwrap();
        assert_eq!(coeffs, vec![0.0, 1.0]);
    }

    #[test]
    fn matches_naive_double_sum() {
        let mut rng = master(21);
        for _ in 0..20 {
            let h = SignVector::random(8, &mut rng);
            let fast = walsh_hadamard(&h).unwrap();
            let slow = naive_wht(&h);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let h = SignVector::new(vec![1, 1, -1]).unwrap();
        assert!(matches!(
            walsh_hadamard(&h),
            Err(MathError::NotPowerOfTwo { len: 3 })
        ));
    }

    #[test]
    fn unnormalized_transform_is_involution_up_to_scale() {
        let mut rng = master(22);
        for n in [2usize, 8, 64] {
            let h = SignVector::random(n, &mut rng);
            let mut data: Vec<f64> = h.entries().iter().map(|&e| e as f64).collect();
            wht_inplace(&mut data);
            wht_inplace(&mut data);
            for (i, v) in data.iter().enumerate() {
                assert_eq!(*v, n as f64 * h.get(i) as f64);
            }
        }
    }

    #[test]
    fn parseval_holds() {
        let mut rng = master(23);
        for n in [2usize, 16, 256, 1024] {
            let h = SignVector::random(n, &mut rng);
            let coeffs = walsh_hadamard(&h).unwrap();
            let energy: f64 = coeffs.iter().map(|c| c * c).sum();
            assert!((energy - 1.0).abs() < 1e-10, "n={n} energy={energy}");
        }
    }

    #[test]
    fn xor_convolution_counts_pairs() {
        // Indicators of {0,1} and {1,3} over Z_2^2: pair XORs are 1,3,0,2.
        let a = vec![1.0, 1.0, 0.0, 0.0];
        let b = vec![0.0, 1.0, 0.0, 1.0];
        let conv = xor_convolve(&a, &b).unwrap();
        assert_eq!(conv, vec![1.0, 1.0, 1.0, 1.0]);
    }
}
