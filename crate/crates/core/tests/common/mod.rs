//! Shared test oracles. Everything here is deliberately independent of the
//! library's computation paths: fixed-point big-decimal arithmetic for
//! sampling signals, finite-difference stencils for probing differential
//! operators, and a plain observability-rank oracle.

#![allow(dead_code)]

use distkit_core::{
    rat_rank, LtiSystem, Matrix, PolyExpSignal, Rational, RatMatrix, SystemPair,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Fixed-point number: value · 10^−50. Fifty digits is far more than the
/// 1e-6 tolerances probed here need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fix(BigInt);

const SCALE_DIGITS: u32 = 50;

fn scale_factor() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS)
}

impl Fix {
    pub fn zero() -> Self {
        Fix(BigInt::zero())
    }

    pub fn one() -> Self {
        Fix(scale_factor())
    }

    pub fn from_int(v: i64) -> Self {
        Fix(BigInt::from(v) * scale_factor())
    }

    pub fn from_rational(r: &Rational) -> Self {
        // round(numer · 10^50 / denom)
        let num = r.numer() * scale_factor();
        let den = r.denom();
        let twice = 2 * &num + if num.is_negative() { -den } else { den.clone() };
        Fix(twice / (2 * den))
    }

    pub fn add(&self, rhs: &Fix) -> Fix {
        Fix(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Fix) -> Fix {
        Fix(&self.0 - &rhs.0)
    }

    pub fn neg(&self) -> Fix {
        Fix(-&self.0)
    }

    pub fn mul(&self, rhs: &Fix) -> Fix {
        Fix(round_div(&(&self.0 * &rhs.0), &scale_factor()))
    }

    pub fn div_int(&self, d: i64) -> Fix {
        Fix(round_div(&self.0, &BigInt::from(d)))
    }

    pub fn mul_rational(&self, r: &Rational) -> Fix {
        Fix(round_div(&(&self.0 * r.numer()), r.denom()))
    }

    pub fn abs(&self) -> Fix {
        Fix(self.0.abs())
    }

    pub fn is_small(&self, digits: u32) -> bool {
        self.0.abs() < BigInt::from(10u32).pow(SCALE_DIGITS - digits)
    }

    pub fn to_f64(&self) -> f64 {
        // Split to avoid losing everything when the integer part is big.
        let scale = scale_factor();
        let int_part = &self.0 / &scale;
        let frac_part = &self.0 % &scale;
        int_part.to_f64().unwrap_or(f64::NAN)
            + frac_part.to_f64().unwrap_or(0.0) / 1e50
    }
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let twice = 2 * num + if (num.is_negative()) != (den.is_negative()) {
        -den
    } else {
        den.clone()
    };
    twice / (2 * den)
}

/// exp by argument halving and a 40-term Taylor tail.
pub fn exp_fix(x: &Fix) -> Fix {
    let half = Fix::from_rational(&Rational::new(1, 2));
    let mut halvings = 0u32;
    let mut arg = x.clone();
    while arg.abs().0 > half.0 && halvings < 64 {
        arg = arg.div_int(2);
        halvings += 1;
    }
    let mut sum = Fix::one();
    let mut term = Fix::one();
    for k in 1..=40i64 {
        term = term.mul(&arg).div_int(k);
        sum = sum.add(&term);
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    sum
}

/// (cos x, sin x) by half-angle reduction and Taylor tails.
pub fn cos_sin_fix(x: &Fix) -> (Fix, Fix) {
    let half = Fix::from_rational(&Rational::new(1, 2));
    let mut halvings = 0u32;
    let mut arg = x.clone();
    while arg.abs().0 > half.0 && halvings < 64 {
        arg = arg.div_int(2);
        halvings += 1;
    }
    let x2 = arg.mul(&arg);
    let mut cos = Fix::one();
    let mut term = Fix::one();
    for k in 1..=30i64 {
        term = term.mul(&x2).div_int((2 * k - 1) * (2 * k)).neg();
        cos = cos.add(&term);
    }
    let mut sin = arg.clone();
    term = arg;
    for k in 1..=30i64 {
        term = term.mul(&x2).div_int((2 * k) * (2 * k + 1)).neg();
        sin = sin.add(&term);
    }
    for _ in 0..halvings {
        let c2 = cos.mul(&cos).add(&sin.mul(&sin).neg());
        let s2 = cos.mul(&sin).add(&sin.mul(&cos));
        cos = c2;
        sin = s2;
    }
    (cos, sin)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFix {
    pub re: Fix,
    pub im: Fix,
}

impl CFix {
    pub fn zero() -> Self {
        CFix {
            re: Fix::zero(),
            im: Fix::zero(),
        }
    }

    pub fn add(&self, rhs: &CFix) -> CFix {
        CFix {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &CFix) -> CFix {
        CFix {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &CFix) -> CFix {
        CFix {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> CFix {
        CFix {
            re: self.re.mul_rational(r),
            im: self.im.mul_rational(r),
        }
    }

    pub fn norm_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

/// e^{(a+bi)·t} for rational a, b, t: exp(at)·(cos bt + i sin bt).
pub fn cexp_fix(lambda_re: &Rational, lambda_im: &Rational, t: &Rational) -> CFix {
    let re_arg = Fix::from_rational(&(lambda_re * t));
    let im_arg = Fix::from_rational(&(lambda_im * t));
    let mag = exp_fix(&re_arg);
    let (c, s) = cos_sin_fix(&im_arg);
    CFix {
        re: mag.mul(&c),
        im: mag.mul(&s),
    }
}

/// High-precision sample of a polynomial-exponential signal at rational t.
pub fn eval_signal_fix(sig: &PolyExpSignal, t: &Rational) -> Vec<CFix> {
    let t_fix = Fix::from_rational(t);
    let mut out = vec![CFix::zero(); sig.dim()];
    for term in sig.terms() {
        let e = cexp_fix(&term.lambda.re, &term.lambda.im, t);
        for (ch, p) in term.coeffs.iter().enumerate() {
            // Horner in CFix with exact coefficient injection.
            let mut acc = CFix::zero();
            for c in p.coeffs().iter().rev() {
                let c_fix = CFix {
                    re: Fix::from_rational(&c.re),
                    im: Fix::from_rational(&c.im),
                };
                acc = CFix {
                    re: acc.re.mul(&t_fix),
                    im: acc.im.mul(&t_fix),
                }
                .add(&c_fix);
            }
            out[ch] = out[ch].clone().add(&e.mul(&acc));
        }
    }
    out
}

/// Central-difference stencil of the given derivative order, 4th-order
/// accurate: (offset multiplier of h, coefficient of f(t + offset·h),
/// power of h to divide by).
pub fn stencil(order: usize) -> (Vec<(i64, Rational)>, u32) {
    let r = |n: i64, d: i64| Rational::new(n, d);
    match order {
        0 => (vec![(0, r(1, 1))], 0),
        1 => (
            vec![(-2, r(1, 12)), (-1, r(-2, 3)), (1, r(2, 3)), (2, r(-1, 12))],
            1,
        ),
        2 => (
            vec![
                (-2, r(-1, 12)),
                (-1, r(4, 3)),
                (0, r(-5, 2)),
                (1, r(4, 3)),
                (2, r(-1, 12)),
            ],
            2,
        ),
        3 => (
            vec![
                (-3, r(1, 8)),
                (-2, r(-1, 1)),
                (-1, r(13, 8)),
                (1, r(-13, 8)),
                (2, r(1, 1)),
                (3, r(-1, 8)),
            ],
            3,
        ),
        _ => panic!("stencil order {order} not tabulated"),
    }
}

/// Applies Σ qⱼ·Dʲ to the signal at rational t by pure finite differences
/// on high-precision samples (step h), channel by channel.
pub fn finite_difference_apply(
    op_coeffs: &[(Rational, Rational)], // (re, im) of qⱼ by ascending j
    sig: &PolyExpSignal,
    t: &Rational,
    h: &Rational,
) -> Vec<CFix> {
    // Sample once on the widest stencil support.
    let mut samples = std::collections::BTreeMap::new();
    for j in 0..op_coeffs.len() {
        let (offsets, _) = stencil(j);
        for (k, _) in offsets {
            samples
                .entry(k)
                .or_insert_with(|| eval_signal_fix(sig, &(t + &(&Rational::from(k) * h))));
        }
    }
    let mut out = vec![CFix::zero(); sig.dim()];
    for (j, (q_re, q_im)) in op_coeffs.iter().enumerate() {
        if q_re.is_zero() && q_im.is_zero() {
            continue;
        }
        let (offsets, hpow) = stencil(j);
        let h_pow_inv = Rational::one() / h.pow(hpow);
        for ch in 0..sig.dim() {
            let mut acc = CFix::zero();
            for (k, coeff) in &offsets {
                acc = acc.add(&samples[k][ch].mul_rational(coeff));
            }
            let deriv = acc.mul_rational(&h_pow_inv);
            let q = CFix {
                re: Fix::from_rational(q_re),
                im: Fix::from_rational(q_im),
            };
            out[ch] = out[ch].clone().add(&q.mul(&deriv));
        }
    }
    out
}

/// Rank of the observability matrix [C; CA; …; CA^{n−1}], the independent
/// oracle for the automation (m = 0) regression.
pub fn observability_rank(c: &RatMatrix, a: &RatMatrix) -> usize {
    let n = a.rows();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut block = c.clone();
    for j in 0..n.max(1) {
        for i in 0..block.rows() {
            rows.push(block.row(i).to_vec());
        }
        if j + 1 < n {
            block = block.mul(a).expect("dims");
        }
    }
    rat_rank(&Matrix::from_rows(rows).expect("rectangular"))
}

pub fn worked_distinguishable() -> SystemPair {
    SystemPair::new(LtiSystem::scalar(0, 1, 1, 0), LtiSystem::scalar(1, 1, 1, 0)).unwrap()
}

pub fn worked_indistinguishable() -> SystemPair {
    SystemPair::new(LtiSystem::scalar(1, 1, 1, 0), LtiSystem::scalar(0, 0, 1, 0)).unwrap()
}
