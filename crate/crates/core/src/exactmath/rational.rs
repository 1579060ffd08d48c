//! Arbitrary-precision rationals.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. This module adds the string codec used by the
//! JSON interfaces (`"p/q"`, or `"p"` when `q = 1`) and a few constructors.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d = BigInt::from_str(d.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Reduce into the half-open interval `[0, m)`.
pub fn reduce_mod(r: &Rational, m: &Rational) -> Rational {
    let q = (r / m).floor();
    r - q * m
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    match v {
        serde_json::Value::String(s) => parse_rational(&s).map_err(serde::de::Error::custom),
        serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
        other => Err(serde::de::Error::custom(format!(
            "expected rational string, got {other}"
        ))),
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => {
                    parse_rational(&s).map_err(serde::de::Error::custom)
                }
                serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
                other => Err(serde::de::Error::custom(format!(
                    "expected rational string, got {other}"
                ))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 2 / -4 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats_integers_without_slash() {
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn reduce_mod_two() {
        let two = int(2);
        assert_eq!(reduce_mod(&rat(-2, 3), &two), rat(4, 3));
        assert_eq!(reduce_mod(&int(5), &two), int(1));
        assert_eq!(reduce_mod(&int(-4), &two), int(0));
    }
}
