//! Univariate polynomials over an exact field.
//!
//! The zero polynomial is the empty coefficient vector; [`Polynomial::degree`]
//! returns `None` for it. `Poly` (rational coefficients) is the type the
//! rank/invariant-factor machinery works in; `CPoly` (Gaussian-rational
//! coefficients) carries differential operators and signal terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Scalar bound for matrix entries: an exact commutative ring. Polynomials
/// qualify; division-dependent algorithms need [`FieldScalar`] instead.
pub trait RingScalar:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> RingScalar for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Scalar bound for elimination with exact division: a field.
pub trait FieldScalar: RingScalar + std::ops::Div<Output = Self> {}

impl<T> FieldScalar for T where T: RingScalar + std::ops::Div<Output = T> {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    /// Coefficients by ascending degree; the last entry, if any, is nonzero.
    coeffs: Vec<F>,
}

pub type Poly = Polynomial<Rational>;
pub type CPoly = Polynomial<ComplexRational>;

impl<F: FieldScalar> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial c · x^k.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// The variable x itself.
    pub fn x() -> Self {
        Polynomial::monomial(F::one(), 1)
    }

    pub fn from_roots(roots: &[F]) -> Self {
        let mut p = Polynomial::one();
        for r in roots {
            p = &p * &Polynomial::new(vec![-r.clone(), F::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: self = q·divisor + r with deg r < deg divisor.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolyDivision);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len() - dlen + 1];
        let lead = divisor.coeffs[dlen - 1].clone();
        for k in (0..quot.len()).rev() {
            let c = rem[k + dlen - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = rem[k + i].clone() - q.clone() * d.clone();
                rem[k + i] = t;
            }
            quot[k] = q;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divmod(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = F::zero();
            for _ in 0..k {
                acc = acc + c.clone();
            }
            out.push(acc);
        }
        Polynomial::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Substitution self(other(x)) by Horner in the polynomial ring.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Polynomial::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<G: FieldScalar>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: FieldScalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            out.push(a + b);
        }
        Polynomial::new(out)
    }
}

impl<F: FieldScalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            out.push(a - b);
        }
        Polynomial::new(out)
    }
}

impl<F: FieldScalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Polynomial::new(out)
    }
}

impl<F: FieldScalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: FieldScalar> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self + &rhs
    }
}

impl<F: FieldScalar> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self - &rhs
    }
}

impl<F: FieldScalar> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Polynomial<F>) -> Polynomial<F> {
        &self * &rhs
    }
}

impl<F: FieldScalar> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: FieldScalar> Zero for Polynomial<F> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
}

impl<F: FieldScalar> One for Polynomial<F> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl Poly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Monic greatest common divisor via a primitive pseudo-remainder
    /// sequence over the integers (keeps intermediate coefficients small).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        let mut a = primitive_int_poly(self);
        let mut b = primitive_int_poly(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = make_primitive(r);
        }
        let g = Polynomial::new(a.into_iter().map(Rational::from_bigint).collect());
        Ok(g.monic())
    }

    /// Monic p / gcd(p, p'): same complex roots as p, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative())?;
        let sf = self
            .divide_exact(&g)
            .expect("gcd(p, p') divides p");
        Ok(sf.monic())
    }

    pub fn eval_complex(&self, z: &ComplexRational) -> ComplexRational {
        let mut acc = ComplexRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + ComplexRational::from_real(c.clone());
        }
        acc
    }

    pub fn lift_complex(&self) -> CPoly {
        self.map_coeffs(|c| ComplexRational::from_real(c.clone()))
    }

    /// Max height of any coefficient; used for pivot tie-breaking.
    pub fn coeff_height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.height())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Clears denominators and divides by the content: a primitive integer
/// polynomial with the same roots and a positive leading coefficient.
fn primitive_int_poly(p: &Poly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut v {
        *c = &*c / &content;
    }
    v
}

/// Pseudo-remainder of primitive integer polynomials: lc(b)^(δ+1)·a mod b.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c = &*c * &lead;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &top * bc;
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    rem
}

impl CPoly {
    pub fn from_real(p: &Poly) -> Self {
        p.lift_complex()
    }
}

trait SignSplit {
    /// (is_negative, magnitude rendering) for term formatting.
    fn sign_split(&self) -> (bool, String);
}

impl SignSplit for Rational {
    fn sign_split(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl SignSplit for ComplexRational {
    fn sign_split(&self) -> (bool, String) {
        if self.im.is_zero() {
            (self.re.is_negative(), self.re.abs().to_string())
        } else {
            (false, format!("({self})"))
        }
    }
}

fn fmt_poly<F>(coeffs: &[F], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result
where
    F: SignSplit + Zero,
{
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = c.sign_split();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = mag == "1";
        match (k, unit) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}·{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}·{var}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, "λ", f)
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, "D", f)
    }
}

impl<F: FieldScalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({:?})", self.coeffs)
    }
}
