use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::continued::hj_length;
use super::dedekind::twelve_p_dedekind;
use super::is_prime;
use crate::error::{Error, Result};

/// Residues `q` with `l(q, p) > 3 sqrt(p) + 2` or `12 |s(q, p)| > 3 sqrt(p) + 5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadSet {
    pub p: u64,
    pub members: Vec<u64>,
}

impl BadSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: u64) -> bool {
        self.members.binary_search(&q).is_ok()
    }

    /// `sqrt(p) (log p + 2 log 2)`.
    pub fn bound(&self) -> f64 {
        bound(self.p)
    }
}

fn bound(p: u64) -> f64 {
    let pf = p as f64;
    pf.sqrt() * (pf.ln() + 2.0 * 2f64.ln())
}

/// `x > 3 sqrt(p)`, decided exactly.
fn exceeds_three_root(x: i128, p: u64) -> bool {
    x > 0 && x * x > 9 * p as i128
}

/// `l > 3 sqrt(p) + 2` and `|N| / p > 3 sqrt(p) + 5` with `N = 12 p s`.
fn bad_from_parts(l: u64, twelve_p_s: i128, p: u64) -> bool {
    let pi = p as i128;
    if exceeds_three_root(l as i128 - 2, p) {
        return true;
    }
    // |N| - 5p > 3 p sqrt(p)  <=>  (|N| - 5p)^2 > 9 p^3
    let x = twelve_p_s.abs() - 5 * pi;
    x > 0 && x * x > 9 * pi * pi * pi
}

pub fn is_bad(q: u64, p: u64) -> Result<bool> {
    let l = hj_length(q, p)?;
    let n = twelve_p_dedekind(q, p)?;
    Ok(bad_from_parts(l, n, p))
}

pub fn bad_set(p: u64) -> Result<BadSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let members = (1..p)
        .into_par_iter()
        .filter(|&q| is_bad(q, p).expect("q < p prime"))
        .collect();
    Ok(BadSet { p, members })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub p: u64,
    pub bad_count: usize,
    pub bound: f64,
    pub max_l: u64,
    /// `max 12 |s(q, p)|` over all residues, as a float.
    pub max_12s: f64,
}

impl CensusRow {
    pub fn within_bound(&self) -> bool {
        (self.bad_count as f64) < self.bound
    }
}

/// One census row per prime in the input; composites are skipped.
pub fn census(candidates: &[u64]) -> Vec<CensusRow> {
    candidates
        .par_iter()
        .filter(|&&p| is_prime(p))
        .map(|&p| {
            let mut bad_count = 0;
            let mut max_l = 0;
            let mut max_n: i128 = 0;
            for q in 1..p {
                let l = hj_length(q, p).expect("q < p");
                let n = twelve_p_dedekind(q, p).expect("q < p prime");
                if bad_from_parts(l, n, p) {
                    bad_count += 1;
                }
                max_l = max_l.max(l);
                max_n = max_n.max(n.abs());
            }
            CensusRow {
                p,
                bad_count,
                bound: bound(p),
                max_l,
                max_12s: max_n as f64 / p as f64,
            }
        })
        .collect()
}
