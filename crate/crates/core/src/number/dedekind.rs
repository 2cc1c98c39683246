use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::continued::hj_expansion;
use super::{check_pair, mod_inverse};
use crate::error::Result;

fn frac(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dedekind sum `s(q, p)` through the reciprocity law
/// `s(a, b) + s(b, a) = -1/4 + (a^2 + b^2 + 1) / (12ab)`.
pub fn dedekind_sum(q: u64, p: u64) -> Result<BigRational> {
    check_pair(q, p)?;
    let mut total = BigRational::zero();
    let mut positive = true;
    let (mut a, mut b) = (q as i128, p as i128);
    while a > 1 && b > 1 {
        let term = frac(-1, 4) + frac(a * a + b * b + 1, 12 * a * b);
        if positive {
            total += term;
        } else {
            total -= term;
        }
        positive = !positive;
        (a, b) = (b % a, a);
    }
    if a == 1 && b > 1 {
        let base = frac((b - 1) * (b - 2), 12 * b);
        if positive {
            total += base;
        } else {
            total -= base;
        }
    }
    Ok(total)
}

/// Literal definition `sum_{k=1}^{p-1} ((k/p)) ((kq/p))`. Quadratic cost; kept
/// for cross-checking.
pub fn dedekind_sum_direct(q: u64, p: u64) -> Result<BigRational> {
    check_pair(q, p)?;
    let p = p as i128;
    let q = q as i128;
    // ((x/p)) = (2x - p) / (2p) for x not divisible by p
    let mut num: i128 = 0;
    for k in 1..p {
        let r = (k * q) % p;
        if r != 0 {
            num += (2 * k - p) * (2 * r - p);
        }
    }
    Ok(frac(num, 4 * p * p))
}

/// The integer `12 p s(q, p)`, via the negative continued fraction of `p/q`:
/// `12 s(q, p) = (q + q') / p + sum (b_i - 3)` where `q q' = 1 mod p`.
pub fn twelve_p_dedekind(q: u64, p: u64) -> Result<i128> {
    check_pair(q, p)?;
    let inv = mod_inverse(q, p)? as i128;
    let h = hj_expansion(q, p)?;
    let excess: i128 = h.coefficients.iter().map(|&b| b as i128 - 3).sum();
    Ok(q as i128 + inv + p as i128 * excess)
}

/// `c(q, p) = 12 s(q, p) + l(q, p)`.
pub fn c_value(q: u64, p: u64) -> Result<BigRational> {
    let s = dedekind_sum(q, p)?;
    let l = hj_expansion(q, p)?.len();
    Ok(s * BigRational::from_integer(BigInt::from(12)) + BigRational::from_integer(BigInt::from(l)))
}
