//! Exact rationals over arbitrary-precision integers.
//!
//! `num_rational::BigRational` already keeps values canonical (coprime
//! numerator and positive denominator), so it is used directly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

#[inline]
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[inline]
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[inline]
pub fn zero() -> Rational {
    Rational::zero()
}

#[inline]
pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^e` as a rational.
#[inline]
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Plain-text rendering: `3`, `-1/2`.
pub fn to_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b` with optional sign.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Rational::new(a, b))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
