use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// Field-like scalar the linear algebra and the reductions are generic over.
///
/// Every sign decision in this crate (P-matrix minors, tangency, ties) is exact
/// only for exact types such as [`BigRational`]; floating-point scalars satisfy
/// the bound but give no guarantees near zero.
pub trait Scalar:
    Clone + PartialOrd + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent a small integer")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Parses the canonical textual form `p/q` (or `p` when `q = 1`).
///
/// Non-canonical spellings such as `2/4`, `+3`, `1/1` or `-0` are rejected so
/// that every value has exactly one representation in instance files.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = |reason| Error::ParseRational {
        text: text.to_string(),
        reason,
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let denom = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| err("bad denominator"))?,
        None => BigInt::from(1),
    };
    if denom.sign() == num_bigint::Sign::NoSign {
        return Err(err("zero denominator"));
    }
    let value = BigRational::new(numer, denom);
    if format_rational(&value) != text {
        return Err(err("not in canonical lowest terms"));
    }
    Ok(value)
}

pub fn format_rational(value: &BigRational) -> String {
    if value.denom() == &BigInt::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Shorthand used throughout tests and generators.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn rejects_non_canonical() {
        for bad in ["2/4", "+3", "1/1", "-0", "1/-2", "03", "1/0", "", "x", "1/", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn generic_helpers() {
        assert_eq!(<f64 as Scalar>::from_ratio(1, 4), 0.25);
        assert_eq!(BigRational::from_ratio(2, 4), rat(1, 2));
    }
}
