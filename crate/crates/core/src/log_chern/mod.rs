//! Closed-form log Chern numbers of extended and partially extended
//! arrangements, and the inequalities they satisfy.

mod inequalities;
mod scan;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use inequalities::{check_inequalities, names, InequalityCheck, InequalityReport};
pub use scan::{ratio_scan, ScanConfig, ScanResult};

use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::{Error, Result};
use crate::exact;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogChernPair {
    #[serde(with = "exact::big_int")]
    pub c1sq: BigInt,
    #[serde(with = "exact::big_int")]
    pub c2: BigInt,
}

impl LogChernPair {
    pub fn new(c1sq: impl Into<BigInt>, c2: impl Into<BigInt>) -> Self {
        LogChernPair {
            c1sq: c1sq.into(),
            c2: c2.into(),
        }
    }

    /// `c1^2 / c2`; `None` when `c2 = 0`.
    pub fn ratio(&self) -> Option<BigRational> {
        if self.c2.is_zero() {
            None
        } else {
            Some(BigRational::new(self.c1sq.clone(), self.c2.clone()))
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `c1^2 = (d-1)(2 delta + 4(g-1) - e) + tau`, `c2 = (d-1)(2(g-1) + delta)`.
pub fn log_chern_extended(spec: &ArrangementSpec) -> Result<LogChernPair> {
    let tau = spec.tau()?;
    let d1 = big(spec.num_sections as u64 - 1);
    let g1 = big(spec.genus) - 1;
    let delta = big(spec.delta() as u64);
    let e = big(spec.degree);
    let c1sq = &d1 * (2 * &delta + 4 * &g1 - e) + big(tau);
    let c2 = &d1 * (2 * g1 + delta);
    Ok(LogChernPair { c1sq, c2 })
}

/// Log Chern numbers after dropping the fibers in `choice`.
pub fn log_chern_partial(spec: &ArrangementSpec, choice: &ExtensionChoice) -> Result<LogChernPair> {
    let mut pair = log_chern_extended(spec)?;
    choice.check(spec)?;
    let mut sum_k = BigInt::zero();
    let mut sum_ko = BigInt::zero();
    for &f in &choice.removed {
        let stats = spec.fiber_stats(f)?;
        sum_k += stats.k;
        sum_ko += stats.k_o;
    }
    let eps = big(choice.epsilon() as u64);
    pair.c2 = pair.c2 - &sum_k + 2 * &eps;
    pair.c1sq = pair.c1sq - sum_ko - 2 * sum_k + 4 * eps;
    Ok(pair)
}

/// Extended log Chern ratio after `r` Frobenius pull-backs:
/// `2 + p^r (ratio - 2)`.
pub fn frobenius_ratio(spec: &ArrangementSpec, r: u32) -> Result<BigRational> {
    let p = spec.char_p.ok_or(Error::CharacteristicUnset)?;
    let ratio = log_chern_extended(spec)?
        .ratio()
        .expect("c2 of a valid arrangement is positive");
    let two = BigRational::from_integer(big(2));
    Ok(&two + BigRational::from_integer(big(p).pow(r)) * (ratio - &two))
}
