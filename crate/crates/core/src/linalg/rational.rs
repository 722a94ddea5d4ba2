//! Scalar helpers on top of `num`'s arbitrary-precision rationals.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"` (optional sign, decimal digits only). Decimal
/// points, exponents and symbolic constants are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational literal \"p\" or \"p/q\": {text:?}"));
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let numer = parse_int(p.trim())?;
            let denom = parse_int(q.trim())?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn floor_int(value: &Rational) -> BigInt {
    value.numer().div_floor(value.denom())
}

pub fn ceil_int(value: &Rational) -> BigInt {
    -((-value.numer()).div_floor(value.denom()))
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Reciprocal of a positive integer, i.e. `1/N`, returning `N`.
pub fn reciprocal_integer(value: &Rational) -> Option<BigInt> {
    if !value.is_positive() || !value.numer().is_one() {
        return None;
    }
    Some(value.denom().clone())
}

/// Least common multiple of the denominators of a list of rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn rejects_non_rational_literals() {
        for s in ["0.5", "1e3", "pi", "", "1/0", "sqrt(2)", "1/2/3", "--1"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_int(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil_int(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(floor_int(&rat(7, 2)), BigInt::from(3));
        assert_eq!(ceil_int(&rat(7, 2)), BigInt::from(4));
        assert_eq!(ceil_int(&int(3)), BigInt::from(3));
    }

    #[test]
    fn extended_gcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                let (g, x, y) = extended_gcd(&a, &b);
                assert_eq!(&a * &x + &b * &y, g);
                assert_eq!(g, a.gcd(&b));
            }
        }
    }
}
