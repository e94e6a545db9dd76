//! Exact rationals and their `"p/q"` wire format.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`. Whitespace around the literal is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::MalformedRational(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    let denom = BigInt::from_str(denom).map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical `"p/q"` form; integers keep an explicit `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Short human form used in text output (`3`, `-1/2`).
pub fn display_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format_rational(value)
    }
}

pub fn sign(value: &Rational) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of rationals as `"p/q"` strings.
pub mod vec_as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(values.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(de)?;
        texts.iter().map(|t| parse_rational(t).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0/1");
    }

    #[test]
    fn rejects_malformed() {
        for text in ["", "1/0", "a/b", "1.5", "1//2"] {
            assert!(matches!(parse_rational(text), Err(Error::MalformedRational(_))), "{text}");
        }
    }

    #[test]
    fn wire_form_is_always_a_fraction() {
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
        assert_eq!(display_rational(&int(5)), "5");
    }
}
