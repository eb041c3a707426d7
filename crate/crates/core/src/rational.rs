//! Exact rationals as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Always `p/q` in lowest terms, `q > 0`.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParams(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

pub fn ceil_div2(r: &Rational) -> Rational {
    (r / int(2)).ceil()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_vec_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_ratio(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_parses() {
        assert_eq!(format_ratio(&ratio(10, 4)), "5/2");
        assert_eq!(format_ratio(&int(3)), "3/1");
        assert_eq!(parse_ratio("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_ratio(" 7 ").unwrap(), int(7));
        assert_eq!(parse_ratio("-2/4").unwrap(), ratio(-1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }
}
