//! Dedekind sums, negative continued fractions, modular inverses, primes and
//! the bad residue set.

mod bad;
mod continued;
mod dedekind;
mod primes;

pub use bad::{bad_set, census, is_bad, BadSet, CensusRow};
pub use continued::{hj_expansion, hj_length, HJExpansion};
pub use dedekind::{c_value, dedekind_sum, dedekind_sum_direct, twelve_p_dedekind};
pub use primes::{is_prime, primes_in};

use crate::error::{Error, Result};

/// Inverse of `v` modulo `p` in `1..p`.
pub fn mod_inverse(v: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::NotInvertible { v, p });
    }
    let (mut r0, mut r1) = (p as i128, (v % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { v, p });
    }
    Ok(t0.rem_euclid(p as i128) as u64)
}

pub(crate) fn check_pair(q: u64, p: u64) -> Result<()> {
    if q == 0 || q >= p || num_integer::gcd(q, p) != 1 {
        return Err(Error::NotCoprime { q, p });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(1, 13).unwrap(), 1);
        assert_eq!(mod_inverse(2, 7).unwrap(), 4);
        assert_eq!(mod_inverse(3, 11).unwrap(), 4);
        assert!(mod_inverse(14, 7).is_err());
        assert!(mod_inverse(0, 7).is_err());
        for p in primes_in(2, 200) {
            for v in 1..p {
                assert_eq!(v * mod_inverse(v, p).unwrap() % p, 1);
            }
        }
    }
}
