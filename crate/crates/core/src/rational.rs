//! Exact rational scalars and small integer helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"`, `"-num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"` in lowest terms, denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Returns the value as an `i64` if it is an integer in range.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

/// `base^exp` for any integer exponent; negative exponents need `base != 0`.
pub fn pow_i(base: i64, exp: i64) -> Rational {
    let b = BigInt::from(base);
    let mag = num_traits::pow(b, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Binomial coefficient with an arbitrary integer top row:
/// `n (n-1) ... (n-k+1) / k!`, and 0 for `k < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn coprime(a: i64, b: i64) -> bool {
    gcd(a, b) == 1
}

pub fn pairwise_coprime(a: i64, b: i64, c: i64) -> bool {
    coprime(a, b) && coprime(b, c) && coprime(a, c)
}

pub fn is_even(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

/// `(-1)^n` for any integer `n`.
pub fn sign_pow(n: &BigInt) -> i32 {
    if n.is_odd() {
        -1
    } else {
        1
    }
}

/// Least positive inverse of `a` modulo `m` (`m >= 1`), via extended Euclid.
/// Modulo 1 every residue is 0, which is returned.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let ext = a.rem_euclid(m).extended_gcd(&m);
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/24").unwrap(), ratio(-1, 12));
        assert_eq!(format_rational(&ratio(-1, 12)), "-1/12");
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(2, 3), BigInt::zero());
        // (-1 choose k) = (-1)^k
        assert_eq!(binom(-1, 3), BigInt::from(-1));
        assert_eq!(binom(-1, 4), BigInt::from(1));
        assert_eq!(binom(4, -1), BigInt::zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(-3, 7), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(5, 1), Some(0));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i(2, -3), ratio(1, 8));
        assert_eq!(pow_i(-3, 3), int(-27));
        assert_eq!(pow_i(7, 0), int(1));
    }
}
