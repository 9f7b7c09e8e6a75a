//! Exact rational scalars.
//!
//! `Rational` is a reduced fraction with a positive denominator; zero is `0/1`.
//! The text form is `p/q`, or `p` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` from machine integers. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("invalid rational `{t}`: {e}")))
}

pub fn parse_vector(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

pub fn format_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Greatest common divisor of the numerators (0 for an all-zero input).
pub fn numerator_gcd(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
