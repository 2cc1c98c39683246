//! Serialization and display helpers for exact numbers.
//!
//! Integers that fit in an `i64` are written as JSON numbers and larger ones
//! as decimal strings; rationals are written as `"num/den"` strings (or a
//! plain integer when the denominator is 1).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Decimal expansion with the repeating block in parentheses, e.g.
/// `2.21(6)` for 133/60. When the period is longer than `max_period` the
/// expansion is cut after `max_period` digits and marked with `...`.
pub fn repeating_decimal(r: &BigRational, max_period: usize) -> String {
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let (whole, mut rem) = num.div_rem(&den);
    write!(out, "{whole}").unwrap();
    if rem.is_zero() {
        return out;
    }
    out.push('.');
    let mut digits = String::new();
    let mut seen: Vec<BigInt> = Vec::new();
    let limit = max_period + 64;
    while !rem.is_zero() {
        if let Some(pos) = seen.iter().position(|s| *s == rem) {
            let period = digits.len() - pos;
            if period > max_period {
                out.push_str(&digits[..max_period.min(digits.len())]);
                out.push_str("...");
            } else {
                out.push_str(&digits[..pos]);
                write!(out, "({})", &digits[pos..]).unwrap();
            }
            return out;
        }
        if seen.len() >= limit {
            out.push_str(&digits[..digits.len().min(max_period)]);
            out.push_str("...");
            return out;
        }
        seen.push(rem.clone());
        rem *= 10;
        let (q, r2) = rem.div_rem(&den);
        digits.push_str(&q.to_string());
        rem = r2;
    }
    out.push_str(&digits);
    out
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub mod big_int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }
}

pub mod big_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }
}
