use std::str::FromStr;

use dashu_int::IBig;
pub use dashu_ratio::RBig as Rational;

use crate::error::{Error, Result};

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::from_parts_signed(IBig::from(num), IBig::from(den))
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |why: &str| Error::InvalidArgument(format!("bad rational {text:?}: {why}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = IBig::from_str(num).map_err(|_| bad("numerator is not an integer"))?;
    let den = IBig::from_str(den).map_err(|_| bad("denominator is not an integer"))?;
    if den == IBig::ZERO {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::from_parts_signed(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().value()
}

/// Exact conversion of a finite float.
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::try_from(x).ok()
}

/// Sum of an iterator of rationals.
pub fn sum<I: IntoIterator<Item = Rational>>(items: I) -> Rational {
    items.into_iter().fold(Rational::ZERO, |acc, x| acc + x)
}

/// Product of an iterator of rationals.
pub fn product<I: IntoIterator<Item = Rational>>(items: I) -> Rational {
    items.into_iter().fold(Rational::ONE, |acc, x| acc * x)
}

/// Serde adapter writing a rational as its canonical string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals.
pub mod serde_rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -2 ").unwrap(), Rational::from(-2));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format_rational(&ratio(10, 4)), "5/2");
        assert_eq!(format_rational(&ratio(-9, 3)), "-3");
        assert_eq!(format_rational(&Rational::ZERO), "0");
    }

    #[test]
    fn reciprocal_products_are_one() {
        for (p, q) in [(3, 7), (-5, 2), (1, 1), (123_456, -789)] {
            let a = ratio(p, q);
            let b = ratio(q, p);
            assert_eq!(&a * &b, Rational::ONE);
        }
    }

    #[test]
    fn float_round_trip_is_exact() {
        let r = from_f64_exact(0.375).unwrap();
        assert_eq!(r, ratio(3, 8));
        assert!(from_f64_exact(f64::NAN).is_none());
        assert_eq!(to_f64(&ratio(1, 4)), 0.25);
    }
}
