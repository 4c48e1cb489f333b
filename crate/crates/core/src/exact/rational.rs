//! Small helpers around `BigRational`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `n / d` as a big rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse { col: 1, msg: format!("{msg}: `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad integer"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad integer"))?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// `p/q` formatting with the `/1` suppressed.
pub fn fmt_q(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `x^e` for a signed exponent. Errors when `x == 0` and `e < 0`.
pub fn pow_signed(x: &BigRational, e: &BigInt) -> Result<BigRational> {
    if e.is_negative() {
        if x.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let r = x.recip();
        Ok(pow_big(&r, &e.magnitude().clone()))
    } else {
        Ok(pow_big(x, e.magnitude()))
    }
}

pub fn pow_big(x: &BigRational, e: &BigUint) -> BigRational {
    let n = pow_int(x.numer(), e);
    let d = pow_int(x.denom(), e);
    BigRational::new_raw(n, d)
}

pub fn pow_int(x: &BigInt, e: &BigUint) -> BigInt {
    let mut result = BigInt::one();
    let mut base = x.clone();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result *= &base;
        }
        if i + 1 < bits {
            base = &base * &base;
        }
    }
    result
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Gcd of the numerators (non-negative).
pub fn numer_gcd<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

/// Number of bits needed to write `x` (numerator plus denominator).
pub fn bit_size(x: &BigRational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn sign(x: &BigRational) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

/// Floor of a rational as a big integer.
pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Ceiling of a rational as a big integer.
pub fn ceil(x: &BigRational) -> BigInt {
    -(-x.numer()).div_floor(x.denom())
}
