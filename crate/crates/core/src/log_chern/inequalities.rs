use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{log_chern_extended, log_chern_partial};
use crate::arrangement::{ArrangementSpec, ExtensionChoice};
use crate::error::Result;
use crate::exact;

/// Names of the individual checks.
pub mod names {
    pub const EXT_C1SQ: &str = "extended c1^2 >= 2d - 1";
    pub const EXT_C2: &str = "extended c2 >= d - 1";
    pub const EXT_RATIO: &str = "extended c1^2/c2 > 2";
    pub const TAU_LOWER: &str = "tau > e(d - 1)";
    pub const EXT_MY: &str = "extended c1^2 < 3 c2";
    pub const TAU_STRICT: &str = "tau < (d - 1)(delta + 2(g - 1) + e)";
    pub const TAU_BOUND: &str = "tau <= (d - 1)(delta + 2(g - 1) + e)";
    pub const PART_C1SQ: &str = "partial c1^2 >= 2";
    pub const PART_C2: &str = "partial c2 >= 1";
    pub const PART_MY: &str = "partial c1^2 < 3 c2";
    pub const PART_RATIO: &str = "partial c1^2/c2 > 2";
    pub const SAKAI: &str = "c1^2 <= 8/3 c2 (line arrangement)";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub holds: bool,
    #[serde(with = "exact::big_rational")]
    pub lhs: BigRational,
    #[serde(with = "exact::big_rational")]
    pub rhs: BigRational,
    /// False for checks that are only informational here, e.g. characteristic
    /// zero statements evaluated on a positive-characteristic arrangement.
    pub applicable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn get(&self, name: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every applicable check holds.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().filter(|c| c.applicable && !c.holds)
    }

    fn push(&mut self, name: &str, lhs: BigInt, op: Op, rhs: BigRational, applicable: bool) {
        let lhs = BigRational::from_integer(lhs);
        let holds = match op {
            Op::Lt => lhs < rhs,
            Op::Le => lhs <= rhs,
            Op::Gt => lhs > rhs,
            Op::Ge => lhs >= rhs,
        };
        self.checks.push(InequalityCheck {
            name: name.to_string(),
            holds,
            lhs,
            rhs,
            applicable,
        });
    }
}

#[derive(Clone, Copy)]
enum Op {
    Lt,
    Le,
    Gt,
    Ge,
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Evaluates the inequalities for the extended arrangement, and for the
/// partially extended one when `choice` removes fibers.
pub fn check_inequalities(spec: &ArrangementSpec, choice: &ExtensionChoice) -> Result<InequalityReport> {
    let ext = log_chern_extended(spec)?;
    let tau = BigInt::from(spec.tau()?);
    let d = BigInt::from(spec.num_sections as u64);
    let e = BigInt::from(spec.degree);
    let g = BigInt::from(spec.genus);
    let delta = BigInt::from(spec.delta() as u64);
    let char0 = spec.char_p.is_none();
    let mut r = InequalityReport::default();

    r.push(names::EXT_C1SQ, ext.c1sq.clone(), Op::Ge, int(2 * &d - 1), true);
    r.push(names::EXT_C2, ext.c2.clone(), Op::Ge, int(&d - 1), true);
    // c1^2 > 2 c2 with c2 > 0
    r.push(names::EXT_RATIO, ext.c1sq.clone(), Op::Gt, int(2 * &ext.c2), true);
    r.push(names::TAU_LOWER, tau.clone(), Op::Gt, int(&e * (&d - 1)), true);
    r.push(names::EXT_MY, ext.c1sq.clone(), Op::Lt, int(3 * &ext.c2), char0);
    let bound: BigInt = (&d - 1) * (&delta + 2 * (&g - 1) + &e);
    r.push(names::TAU_STRICT, tau.clone(), Op::Lt, int(bound.clone()), char0);
    r.push(names::TAU_BOUND, tau, Op::Le, int(bound), char0);

    let chosen = if choice.is_extended() {
        ext
    } else {
        let part = log_chern_partial(spec, choice)?;
        r.push(names::PART_C1SQ, part.c1sq.clone(), Op::Ge, int(2), true);
        r.push(names::PART_C2, part.c2.clone(), Op::Ge, int(1), true);
        r.push(names::PART_MY, part.c1sq.clone(), Op::Lt, int(3 * &part.c2), char0);
        r.push(names::PART_RATIO, part.c1sq.clone(), Op::Gt, int(2 * &part.c2), false);
        part
    };
    let lines = spec.genus == 0 && spec.degree == 1 && char0;
    // 3 c1^2 <= 8 c2
    r.push(names::SAKAI, 3 * chosen.c1sq, Op::Le, int(8 * chosen.c2), lines);
    Ok(r)
}
