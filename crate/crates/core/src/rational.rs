//! Arbitrary-precision rational scalars in canonical form.
//!
//! `Rational` wraps [`num_rational::BigRational`]: the denominator is always
//! positive and gcd(|numerator|, denominator) = 1. The text form accepted by
//! [`Rational::parse`] is `"p/q"`, `"p"`, or a finite decimal such as
//! `"0.25"`; the emitted form is `"p/q"` or `"p"`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc *= self.clone();
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion from a finite `f64` (every finite double is a dyadic
    /// rational). Returns `None` for NaN or infinities.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    /// Max of |numerator| and denominator; used for pivot tie-breaking.
    pub fn height(&self) -> BigInt {
        let n = self.0.numer().abs();
        let d = self.0.denom().clone();
        if n > d { n } else { d }
    }

    /// Parses `"p/q"`, `"p"`, or a finite decimal string (`"-3.25"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::ParseRational(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (sign, int_digits) = match int_part.as_bytes().first() {
                Some(b'-') => (Sign::Minus, &int_part[1..]),
                Some(b'+') => (Sign::Plus, &int_part[1..]),
                _ => (Sign::Plus, int_part),
            };
            if frac_part.is_empty() && int_digits.is_empty() {
                return Err(err());
            }
            if !int_digits.bytes().all(|b| b.is_ascii_digit())
                || !frac_part.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(err());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
                .map_err(|_| err())?;
            if sign == Sign::Minus {
                n = -n;
            }
            let d = BigInt::from(10u32).pow(frac_part.len() as u32);
            return Ok(Rational(BigRational::new(n, d)));
        }
        let n = BigInt::from_str(s).map_err(|_| err())?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        self.0 *= rhs.0;
    }
}

impl num_traits::Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl num_traits::One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form() {
        let x = r(6, -4);
        assert_eq!(x, r(-3, 2));
        assert!(x.denom() > &BigInt::from(0));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(r(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Rational::parse("3/4").unwrap(), r(3, 4));
        assert_eq!(Rational::parse("-7").unwrap(), r(-7, 1));
        assert_eq!(Rational::parse("0.25").unwrap(), r(1, 4));
        assert_eq!(Rational::parse("-3.5").unwrap(), r(-7, 2));
        assert_eq!(Rational::parse(" 2 / 6 ").unwrap(), r(1, 3));
        assert_eq!(Rational::parse(".5").unwrap(), r(1, 2));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("a").is_err());
        assert!(Rational::parse("1.2.3").is_err());
        assert!(Rational::parse("").is_err());
    }

    #[test]
    fn cross_multiplication_identity() {
        // (a/b + c/d) equals (ad + cb) / bd, exactly.
        let a = r(7, 12);
        let b = r(-5, 18);
        let sum = &a + &b;
        let expect = Rational::from_big(
            a.numer() * b.denom() + b.numer() * a.denom(),
            a.denom() * b.denom(),
        );
        assert_eq!(sum, expect);
    }

    #[test]
    fn dyadic_roundtrip() {
        let x = Rational::from_f64_exact(0.1).unwrap();
        assert_eq!(x.to_f64(), 0.1);
        assert!(Rational::from_f64_exact(f64::NAN).is_none());
    }
}
