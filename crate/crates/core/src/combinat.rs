//! Small exact combinatorial helpers shared by the closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `k choose 2`, zero for `k < 2`. Used for all triangular exponents.
pub fn choose2(k: u32) -> u32 {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// Binomial coefficient with the coefficient-extraction convention:
/// zero when `u < 0`, `v < 0` or `u < v`.
pub fn binomial(u: i64, v: i64) -> BigInt {
    if u < 0 || v < 0 || u < v {
        return BigInt::zero();
    }
    let v = v.min(u - v);
    let mut acc = BigInt::one();
    for i in 0..v {
        acc *= u - i;
        acc /= i + 1;
    }
    acc
}
