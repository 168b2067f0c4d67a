//! Exact Gaussian-rational scalars: complex numbers with rational parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        ComplexRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(re: i64) -> Self {
        Self::from_real(Rational::from(re))
    }

    pub fn zero() -> Self {
        Self::from_real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_real(Rational::one())
    }

    pub fn i() -> Self {
        ComplexRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// |z|^2 = re^2 + im^2, exact.
    pub fn modulus_sq(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let m = self.modulus_sq();
        ComplexRational {
            re: &self.re / &m,
            im: &(-&self.im) / &m,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ComplexRational {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Exact conversion from a finite `Complex64`.
    pub fn from_c64_exact(z: Complex64) -> Option<Self> {
        Some(ComplexRational {
            re: Rational::from_f64_exact(z.re)?,
            im: Rational::from_f64_exact(z.im)?,
        })
    }

    /// Parses `"a"`, `"bi"`, `"a+bi"`, or `"a-bi"` with rational `a`, `b`
    /// (`"1/2-3/4i"`, `"-i"`, `"2.5i"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::ParseComplex(s.clone());
        if s.is_empty() {
            return Err(err());
        }
        if let Some(body) = s.strip_suffix('i') {
            // Split after the leading sign at the last top-level +/-.
            let bytes = body.as_bytes();
            let mut split = None;
            for idx in (1..bytes.len()).rev() {
                if (bytes[idx] == b'+' || bytes[idx] == b'-')
                    && bytes[idx - 1] != b'/'
                    && bytes[idx - 1] != b'+'
                    && bytes[idx - 1] != b'-'
                    && bytes[idx - 1] != b'.'
                    && bytes[idx - 1] != b'e'
                {
                    split = Some(idx);
                    break;
                }
            }
            let (re_str, im_str) = match split {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("0", body),
            };
            let im = match im_str {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                other => Rational::parse(other).map_err(|_| err())?,
            };
            let re = if re_str.is_empty() {
                Rational::zero()
            } else {
                Rational::parse(re_str).map_err(|_| err())?
            };
            Ok(ComplexRational { re, im })
        } else {
            Ok(Self::from_real(Rational::parse(&s).map_err(|_| err())?))
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ComplexRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexRational::parse(s)
    }
}

impl Add for ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: ComplexRational) -> ComplexRational {
        ComplexRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: ComplexRational) -> ComplexRational {
        ComplexRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: ComplexRational) -> ComplexRational {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexRational { re, im }
    }
}

impl Div for ComplexRational {
    type Output = ComplexRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ComplexRational) -> ComplexRational {
        self * rhs.recip()
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl num_traits::Zero for ComplexRational {
    fn zero() -> Self {
        ComplexRational::zero()
    }
    fn is_zero(&self) -> bool {
        ComplexRational::is_zero(self)
    }
}

impl num_traits::One for ComplexRational {
    fn one() -> Self {
        ComplexRational::one()
    }
}

impl From<Rational> for ComplexRational {
    fn from(re: Rational) -> Self {
        ComplexRational::from_real(re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, b: i64) -> ComplexRational {
        ComplexRational::new(Rational::from(a), Rational::from(b))
    }

    #[test]
    fn field_ops() {
        let a = z(1, 2);
        let b = z(3, -1);
        assert_eq!(a.clone() * b.clone(), z(5, 5));
        let q = a.clone() / b.clone();
        assert_eq!(q * b, a);
    }

    #[test]
    fn conj_product_is_real() {
        let a = ComplexRational::new(Rational::new(2, 3), Rational::new(-5, 7));
        let p = a.clone() * a.conj();
        assert!(p.im.is_zero());
        assert_eq!(p.re, a.modulus_sq());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(ComplexRational::parse("3/2").unwrap(), z(3, 0).scale(&Rational::new(1, 2)));
        assert_eq!(ComplexRational::parse("i").unwrap(), ComplexRational::i());
        assert_eq!(ComplexRational::parse("-i").unwrap(), z(0, -1));
        assert_eq!(ComplexRational::parse("1+2i").unwrap(), z(1, 2));
        assert_eq!(ComplexRational::parse("1/2-3/4i").unwrap(),
            ComplexRational::new(Rational::new(1, 2), Rational::new(-3, 4)));
        assert_eq!(ComplexRational::parse("0.5i").unwrap(),
            ComplexRational::new(Rational::zero(), Rational::new(1, 2)));
        assert!(ComplexRational::parse("1+").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for v in [z(0, 0), z(1, 0), z(0, 1), z(-2, -3), z(5, -1)] {
            assert_eq!(ComplexRational::parse(&v.to_string()).unwrap(), v);
        }
    }
}
