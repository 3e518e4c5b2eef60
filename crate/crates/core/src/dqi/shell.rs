use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Sum over all weight-`k` error vectors of the product of the `+-1`
/// constraint values, for an assignment satisfying `s` of `m` constraints:
///
/// `2 * sum_{0 <= 2j <= min(k, m-s)} C(s, k-2j) C(m-s, 2j) - C(m, k)`.
pub fn shell_sum_a(k: usize, s: usize, m: usize) -> Result<BigInt> {
    if k > m || s > m {
        return Err(Error::InvalidArgument(format!(
            "shell sum needs 0 <= k, s <= m (k={k}, s={s}, m={m})"
        )));
    }
    let mut acc = BigUint::zero();
    let mut j = 0;
    while 2 * j <= k.min(m - s) {
        acc += binomial(s, k - 2 * j) * binomial(m - s, 2 * j);
        j += 1;
    }
    Ok(BigInt::from(acc) * 2 - BigInt::from(binomial(m, k)))
}

/// `A_{k,s} / C(m, k)`, a value in `[-1, 1]`.
pub fn shell_sum_ratio(k: usize, s: usize, m: usize) -> Result<f64> {
    let a = shell_sum_a(k, s, m)?;
    let c = BigInt::from(binomial(m, k));
    // scale down together so both fit in f64
    let bits = c.bits().saturating_sub(900);
    let (a, c) = (a >> bits, c >> bits);
    Ok(a.to_f64().unwrap_or(0.0) / c.to_f64().unwrap_or(f64::INFINITY))
}
