//! Exact rational scalars and their text form.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact scalar used everywhere in the kernel. Always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"`. A zero denominator is a schema error.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Schema(format!("malformed rational literal {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Schema(format!("zero denominator in rational literal {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse(s)).collect()
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

pub fn parse_matrix(m: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|r| parse_vec(r)).collect()
}

pub fn format_matrix(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| format_vec(r)).collect()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Fractional part in `[0, 1)`.
pub fn fract(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("-2").unwrap()), "-2");
        assert_eq!(format(&parse("4/-2").unwrap()), "-2");
        assert_eq!(format(&parse(" 0/5 ").unwrap()), "0");
    }

    #[test]
    fn zero_denominator_is_schema_error() {
        assert!(matches!(parse("1/0"), Err(Error::Schema(_))));
        assert!(matches!(parse("x"), Err(Error::Schema(_))));
        assert!(matches!(parse("1/2/3"), Err(Error::Schema(_))));
    }

    #[test]
    fn fractional_part_is_nonnegative() {
        assert_eq!(fract(&frac(-1, 3)), frac(2, 3));
        assert_eq!(fract(&frac(7, 2)), frac(1, 2));
        assert_eq!(fract(&int(-4)), zero());
    }
}
