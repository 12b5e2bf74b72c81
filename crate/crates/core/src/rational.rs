//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in canonical form
//! (positive denominator, numerator and denominator coprime) after every
//! operation, so equality is structural and coefficient bit-size stays as
//! small as the value allows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Canonical-form arbitrary-precision rational.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational p/q from machine integers. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split('/').collect::<Vec<_>>()[..] {
        [p] => p
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| Error::BadRational(s.to_owned())),
        [p, q] => {
            let num = p.parse::<BigInt>().map_err(|_| Error::BadRational(s.to_owned()))?;
            let den = q.parse::<BigInt>().map_err(|_| Error::BadRational(s.to_owned()))?;
            if den == BigInt::ZERO {
                return Err(Error::BadRational(s.to_owned()));
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(Error::BadRational(s.to_owned())),
    }
}

/// Render as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("3/-4").unwrap(), ratio(-3, 4));
        assert_eq!(format_rational(&parse_rational("-4/2").unwrap()), "-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/b", "1/2/3", "1.5"] {
            assert!(parse_rational(s).is_err(), "{s:?} should not parse");
        }
    }
}
