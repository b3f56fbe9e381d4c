//! Closed-form distributions and Pauli-weight statistics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Sld, SldError, MAX_QUBITS};

/// `C(n, k)`, zero for `k > n`. Exact for `n <= 67`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `C(n, k)` extended by zero to negative `k`.
fn binomial_i(n: usize, k: i64) -> u64 {
    if k < 0 {
        0
    } else {
        binomial(n, k as usize)
    }
}

fn check_qubits(n: usize) -> Result<(), SldError> {
    if n > MAX_QUBITS {
        return Err(SldError::Domain(format!("{n} qubits exceed {MAX_QUBITS}")));
    }
    Ok(())
}

/// GHZ-class distribution: `A_k = C(n,k)[k even] + 2^{n-1}[k = n]`.
pub fn closed_form_ghz(n: usize) -> Result<Sld, SldError> {
    if n < 2 {
        return Err(SldError::Domain(format!("GHZ states need n >= 2, got {n}")));
    }
    check_qubits(n)?;
    let mut a: Vec<u64> = (0..=n)
        .map(|k| if k % 2 == 0 { binomial(n, k) } else { 0 })
        .collect();
    a[n] += 1 << (n - 1);
    Sld::new(a)
}

/// Distribution of `|GHZ^m⟩ ⊗ |0⟩^{⊗(n-m)}`:
/// `A_k = 2^{m-1} C(n-m, k-m) + Σ_j C(m, 2j) C(n-m, k-2j)`.
pub fn closed_form_ghz_tensor_zero(n: usize, m: usize) -> Result<Sld, SldError> {
    if m < 2 || m > n {
        return Err(SldError::Domain(format!(
            "need 2 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    check_qubits(n)?;
    let rest = n - m;
    let a = (0..=n as i64)
        .map(|k| {
            let sharp = (1u64 << (m - 1)) * binomial_i(rest, k - m as i64);
            let broad: u64 = (0..=k / 2)
                .map(|j| binomial(m, 2 * j as usize) * binomial_i(rest, k - 2 * j))
                .sum();
            sharp + broad
        })
        .collect();
    Sld::new(a)
}

/// Binomial approximation for graph states with `isolated` isolated
/// vertices: `A_k ≈ 2ⁿ C(n,k) p^k (1-p)^{n-k}` with `p = (3n - I) / 4n`.
pub fn approximate_sld(n: usize, isolated: usize) -> Result<Vec<f64>, SldError> {
    if n == 0 || isolated > n {
        return Err(SldError::Domain(format!(
            "need n >= 1 and 0 <= I <= n, got n = {n}, I = {isolated}"
        )));
    }
    check_qubits(n)?;
    let p = (3 * n - isolated) as f64 / (4 * n) as f64;
    let scale = 2f64.powi(n as i32);
    Ok((0..=n)
        .map(|k| scale * binomial(n, k) as f64 * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32))
        .collect())
}

/// Population a Pauli operator is drawn uniformly from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WeightDistribution {
    /// The stabilizer group of a product state: `C(n,k) / 2ⁿ`.
    Tpb,
    /// All of `{1,X,Y,Z}^{⊗n}`: `C(n,k) 3^k / 4ⁿ`.
    PauliGroup,
}

/// Exact probability that a uniformly drawn operator has weight `k`.
pub fn weight_probability(
    kind: WeightDistribution,
    n: usize,
    k: usize,
) -> Result<BigRational, SldError> {
    if k > n {
        return Err(SldError::Domain(format!(
            "need 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let choose = binomial_big(n, k);
    let (num, den) = match kind {
        WeightDistribution::Tpb => (choose, BigInt::from(2).pow(n as u32)),
        WeightDistribution::PauliGroup => (
            choose * BigInt::from(3).pow(k as u32),
            BigInt::from(4).pow(n as u32),
        ),
    };
    Ok(BigRational::new(num, den))
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    if k > n {
        BigInt::zero()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn rat(a: i64, b: i64) -> BigRational {
        Ratio::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(63, 31), 916312070471295267);
        assert_eq!(binomial_i(4, -1), 0);
    }

    #[test]
    fn ghz_examples() {
        assert_eq!(closed_form_ghz(3).unwrap().counts(), &[1, 0, 3, 4]);
        assert_eq!(closed_form_ghz(2).unwrap().counts(), &[1, 0, 3]);
        assert_eq!(closed_form_ghz(4).unwrap().counts(), &[1, 0, 6, 0, 9]);
        assert!(closed_form_ghz(1).is_err());
        assert!(closed_form_ghz(63).is_ok());
        assert!(closed_form_ghz(64).is_err());
    }

    #[test]
    fn ghz_tensor_zero_examples() {
        assert_eq!(
            closed_form_ghz_tensor_zero(4, 2).unwrap().counts(),
            &[1, 2, 4, 6, 3]
        );
        assert_eq!(
            closed_form_ghz_tensor_zero(3, 2).unwrap().counts(),
            &[1, 1, 3, 3]
        );
        for n in 2..=20 {
            assert_eq!(
                closed_form_ghz_tensor_zero(n, n).unwrap(),
                closed_form_ghz(n).unwrap()
            );
        }
        assert!(closed_form_ghz_tensor_zero(3, 1).is_err());
        assert!(closed_form_ghz_tensor_zero(3, 4).is_err());
    }

    #[test]
    fn approximation() {
        for n in 1..=12 {
            let v = approximate_sld(n, n).unwrap();
            for (k, x) in v.iter().enumerate() {
                assert!((x - binomial(n, k) as f64).abs() < 1e-9 * binomial(n, k) as f64);
            }
            for i in 0..=n {
                let s: f64 = approximate_sld(n, i).unwrap().iter().sum();
                assert!((s - 2f64.powi(n as i32)).abs() < 1e-9 * s);
            }
        }
        let v = approximate_sld(4, 0).unwrap();
        let expect: Vec<f64> = (0..=4)
            .map(|k| {
                16.0 * binomial(4, k) as f64 * 0.75f64.powi(k as i32) * 0.25f64.powi(4 - k as i32)
            })
            .collect();
        assert_eq!(v, expect);
        assert!(approximate_sld(3, 4).is_err());
        assert!(approximate_sld(0, 0).is_err());
    }

    #[test]
    fn weight_probabilities() {
        use WeightDistribution::*;
        assert_eq!(weight_probability(Tpb, 2, 1).unwrap(), rat(1, 2));
        assert_eq!(weight_probability(PauliGroup, 1, 1).unwrap(), rat(3, 4));
        assert_eq!(weight_probability(Tpb, 5, 0).unwrap(), rat(1, 32));
        assert_eq!(weight_probability(PauliGroup, 3, 0).unwrap(), rat(1, 64));
        assert!(weight_probability(Tpb, 2, 3).is_err());
        for n in 0..=40 {
            for kind in [Tpb, PauliGroup] {
                let total = (0..=n)
                    .map(|k| weight_probability(kind, n, k).unwrap())
                    .fold(BigRational::zero(), |a, b| a + b);
                assert_eq!(total, BigRational::one());
            }
        }
    }
}
