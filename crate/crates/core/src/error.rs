use thiserror::Error;

use crate::arrangement::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arrangement: {0}")]
    InvalidSpec(ValidationReport),

    #[error("malformed contact point: {0}")]
    MalformedPoint(String),

    #[error("fiber index {index} out of range (arrangement has {delta} singular fibers)")]
    FiberIndex { index: usize, delta: usize },

    #[error("fiber {0} is not removable: some singular point on it has no transverse pair")]
    NotRemovable(usize),

    #[error("cannot remove {removed} of {delta} fibers: at most delta - 2 may be removed")]
    TooManyRemoved { removed: usize, delta: usize },

    #[error("fiber {0} listed twice in the removal set")]
    DuplicateFiber(usize),

    #[error("operation requires a positive characteristic, but the arrangement has none")]
    CharacteristicUnset,

    #[error("no unramified cover of P^1 exists; etale pull-back requires genus >= 1")]
    RationalBase,

    #[error("{q} and {p} must satisfy 0 < q < p and gcd(q, p) = 1")]
    NotCoprime { q: u64, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{v} is not invertible modulo {p}")]
    NotInvertible { v: u64, p: u64 },

    #[error("prime {p} equals the characteristic of the ground field")]
    PrimeIsCharacteristic { p: u64 },

    #[error("no positive solution exists for p = {p}: the minimum attainable sum is {minimum}")]
    NoSolution { p: u64, minimum: u64 },

    #[error("enumeration budget exceeded: p = {needed} is above the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("solution does not fit the arrangement: {0}")]
    SolutionShape(String),

    #[error("multiplicity {nu} of component {component} lies outside (0, {p})")]
    MultiplicityOutOfRange { component: String, nu: u64, p: u64 },

    #[error("node between {0} and {1} matches no multiplicity template")]
    UntaggableNode(String, String),

    #[error("Chern number {which} = {value} is not an integer")]
    Integrality { which: &'static str, value: String },

    #[error("c1^2 + c2 = {0} is not divisible by 12")]
    Noether(String),

    #[error("unknown builtin arrangement `{0}`")]
    UnknownBuiltin(String),

    #[error("height inequality requires fiber genus >= 2, got {0}")]
    FiberGenus(i64),

    #[error("malformed incidence structure: {0}")]
    MalformedIncidence(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
