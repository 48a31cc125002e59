//! Exact binomial coefficients.
//!
//! `C(n, k) = 0` whenever `k < 0` or `k > n`; every bound checked by the
//! verifiers is evaluated through these.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` with a signed top; a negative `n` yields zero.
///
/// Bounds such as `C(n-6, k-4)` are written with signed arithmetic so that
/// small `n` degrade to zero instead of underflowing.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    binomial(n as u64, k)
}

/// Checked machine-word binomial.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// `C(n, k)` as a `usize` count; panics if it does not fit.
pub fn count(n: usize, k: usize) -> usize {
    binomial_u128(n as u64, k as u64)
        .and_then(|c| usize::try_from(c).ok())
        .unwrap_or_else(|| panic!("C({n}, {k}) overflows usize"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(298, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binom(-2, 0), BigUint::zero());
    }

    #[test]
    fn pascal_identity() {
        for n in 1..80u64 {
            for k in -1..=(n as i64 + 1) {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn word_and_big_agree() {
        for n in 0..120u64 {
            for k in 0..=n {
                assert_eq!(BigUint::from(binomial_u128(n, k).unwrap()), binomial(n, k as i64));
            }
        }
        assert_eq!(binomial_u128(200, 100), None);
    }

    #[test]
    fn large_value_is_exact() {
        // C(100, 50) = 100891344545564193334812497256
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }
}
