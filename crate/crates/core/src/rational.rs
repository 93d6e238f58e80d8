//! Exact rational scalars.
//!
//! Every quantity in the crate (degrees, section counts, thresholds, Chern
//! numbers) is carried as an arbitrary-precision fraction kept in lowest
//! terms with a positive denominator. Serialized form is always `"p/q"`,
//! including integers (`"12/1"`), so that output is never mistaken for a
//! float.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` rendering.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("`{s}` is not a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// `true` iff `lo < q < hi`.
pub(crate) fn strictly_between(q: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo < q && q < hi
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// `#[serde(with = "serde_rational")]`
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "serde_rational_opt")]`
pub mod serde_rational_opt {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let q = rat(6, -4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&int(12)), "12/1");
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational(" -10/4 ").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small() -> impl Strategy<Value = (i64, i64)> {
        (-10_000i64..10_000, 1i64..10_000)
    }

    proptest! {
        #[test]
        fn sums_are_exact_and_reduced((p, q) in small(), (r, s) in small()) {
            let sum = rat(p, q) + rat(r, s);
            // cross-multiplied integer identity
            let lhs = BigInt::from(p * s + r * q) * sum.denom();
            let rhs = sum.numer() * BigInt::from(q * s);
            prop_assert_eq!(lhs, rhs);
            prop_assert!(sum.denom().is_positive());
            prop_assert!(sum.numer().gcd(sum.denom()).is_one());
        }

        #[test]
        fn format_parse_roundtrip((p, q) in small()) {
            let x = rat(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
