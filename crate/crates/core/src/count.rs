//! Exact big-integer counting: binomial coefficients and binomial sums.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(n, k)` with the convention `C(n, k) = 0` for `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigCount::one();
    // acc = C(n - k + i, i) after step i; each division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `sum_{i=lo}^{hi} C(n, i)`, empty when `hi < lo`.
pub fn binomial_sum(n: i64, lo: i64, hi: i64) -> BigCount {
    (lo.max(0)..=hi).map(|i| binomial(n, i)).sum()
}

pub fn pow2(e: u32) -> BigCount {
    BigCount::one() << e
}

/// Lossy conversion for ratios and reports; counts themselves stay exact.
pub fn to_f64(x: &BigCount) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_string().parse().unwrap_or(f64::INFINITY)
    } else {
        f64::INFINITY
    }
}
