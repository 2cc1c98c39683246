//! Height inequality for algebraic points of a semi-stable fibration.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightInput {
    /// Genus of the general fiber.
    pub g: i64,
    /// Number of singular fibers.
    pub delta: u64,
    /// Self-intersection of the relative dualizing sheaf.
    pub omega_sq: i64,
    /// Geometric logarithmic discriminant of the point.
    #[serde(with = "exact::big_rational")]
    pub d_p: BigRational,
    /// Geometric height of the point.
    #[serde(with = "exact::big_rational")]
    pub h_k: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub holds: bool,
    #[serde(with = "exact::big_rational")]
    pub lhs: BigRational,
    #[serde(with = "exact::big_rational")]
    pub rhs: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Checks `h_K < (2g - 1)(d(P) + delta) - omega^2`.
pub fn height_check(input: &HeightInput) -> Result<HeightReport> {
    if input.g < 2 {
        return Err(Error::FiberGenus(input.g));
    }
    let factor = BigRational::from_integer(BigInt::from(2 * input.g - 1));
    let rhs = factor * (&input.d_p + BigRational::from_integer(BigInt::from(input.delta)))
        - BigRational::from_integer(BigInt::from(input.omega_sq));
    let holds = input.h_k < rhs;
    Ok(HeightReport {
        holds,
        lhs: input.h_k.clone(),
        rhs,
        note: (!holds).then(|| "inputs inconsistent with a non-isotrivial semi-stable family".to_string()),
    })
}
