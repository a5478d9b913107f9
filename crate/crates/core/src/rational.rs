//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, arbitrary precision. This module adds the text format used
//! on every external surface: `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// `p / q`, reduced. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace ignored).
///
/// Decimal and exponent notation are rejected: the toolkit never accepts a
/// value it cannot represent exactly as written.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let fail = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(fail("decimal notation is not accepted; write the value as p/q"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = parse_int(num).ok_or_else(|| fail("numerator is not an integer"))?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(fail("sign belongs on the numerator"));
            }
            parse_int(d).ok_or_else(|| fail("denominator is not an integer"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("13/20").unwrap(), frac(13, 20));
        assert_eq!(parse_rational(" -6 ").unwrap(), int(-6));
        assert_eq!(parse_rational("6/14").unwrap(), frac(3, 7));
        assert_eq!(parse_rational("+2/4").unwrap(), frac(1, 2));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        let err = parse_rational("0.5").unwrap_err();
        assert!(err.to_string().contains("p/q"));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn canonical_output() {
        assert_eq!(format_rational(&frac(10, 14)), "5/7");
        assert_eq!(format_rational(&frac(-4, 2)), "-2");
        assert_eq!(format_rational(&zero()), "0");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = frac(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }

        #[test]
        fn addition_is_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = frac(a, b);
            let y = frac(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
