//! JSON encodings for exact numbers.
//!
//! Integers are written as decimal strings so values wider than 64 bits
//! survive interchange. Readers accept either a string or a JSON number.
//! Rationals are written as `"num/den"` strings (`"num"` when integral).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Newtype giving a [`BigInt`] the decimal-string JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecInt(pub BigInt);

impl Serialize for DecInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct DecIntVisitor;

impl<'de> Visitor<'de> for DecIntVisitor {
    type Value = DecInt;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DecInt, E> {
        Ok(DecInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DecInt, E> {
        Ok(DecInt(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<DecInt, E> {
        Err(E::custom(format!("non-integer number {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DecInt, E> {
        BigInt::from_str(v.trim())
            .map(DecInt)
            .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
    }
}

impl<'de> Deserialize<'de> for DecInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(DecIntVisitor)
    }
}

pub(crate) mod dec_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        DecInt::deserialize(d).map(|x| x.0)
    }
}

pub(crate) mod dec_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<DecInt>::deserialize(d)?;
        Ok(raw.into_iter().map(|x| x.0).collect())
    }
}

/// Formats a rational as `num/den`, or `num` when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num`, `num/den` or a plain decimal integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dec_int_accepts_numbers_and_strings() {
        let a: DecInt = serde_json::from_str("-17").unwrap();
        let b: DecInt = serde_json::from_str("\"123456789012345678901234567890\"").unwrap();
        assert_eq!(a.0, BigInt::from(-17));
        assert_eq!(b.0.to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<DecInt>("1.5").is_err());
        assert!(serde_json::from_str::<DecInt>("\"x1\"").is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"-17\"");
    }

    #[test]
    fn rationals_round_trip_through_strings() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 5 ").unwrap()), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }
}
