use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Negative (Hirzebruch-Jung) continued fraction
/// `p/q = b_1 - 1/(b_2 - 1/(... - 1/b_l))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJExpansion {
    pub coefficients: Vec<u64>,
}

impl HJExpansion {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Folds the expansion back into a rational number.
    pub fn evaluate(&self) -> BigRational {
        let mut iter = self.coefficients.iter().rev();
        let Some(&last) = iter.next() else {
            return BigRational::zero();
        };
        let mut acc = BigRational::from_integer(BigInt::from(last));
        for &b in iter {
            acc = BigRational::from_integer(BigInt::from(b)) - acc.recip();
        }
        acc
    }
}

pub fn hj_expansion(q: u64, p: u64) -> Result<HJExpansion> {
    if q == 0 || q >= p {
        return Err(Error::NotCoprime { q, p });
    }
    let mut coefficients = Vec::new();
    let (mut a, mut b) = (p, q);
    while b != 0 {
        let c = a.div_ceil(b);
        coefficients.push(c);
        (a, b) = (b, c * b - a);
    }
    Ok(HJExpansion { coefficients })
}

/// Length `l(q, p)` of the expansion of `p/q`, without storing it.
pub fn hj_length(q: u64, p: u64) -> Result<u64> {
    if q == 0 || q >= p {
        return Err(Error::NotCoprime { q, p });
    }
    let (mut a, mut b, mut n) = (p, q, 0);
    while b != 0 {
        let c = a.div_ceil(b);
        (a, b) = (b, c * b - a);
        n += 1;
    }
    Ok(n)
}
