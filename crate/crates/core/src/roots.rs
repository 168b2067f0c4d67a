//! Polynomial root extraction: exact rational roots by candidate division,
//! everything else by Aberth–Ehrlich simultaneous iteration with Newton
//! polish and an exact a-posteriori residual.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::complex::ComplexRational;
use crate::poly::Poly;
use crate::rational::Rational;

/// Divisors of |n|, if |n| is small enough to enumerate by trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let v = n.abs().to_u64()?;
    if v == 0 || v > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= v {
        if v % d == 0 {
            divs.push(d);
            if d != v / d {
                divs.push(v / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// Strips exact rational roots from a squarefree polynomial. Returns the
/// roots found and the remaining cofactor.
pub(crate) fn exact_rational_roots(p: &Poly) -> (Vec<Rational>, Poly) {
    let mut roots = Vec::new();
    let mut rem = p.clone();

    // A squarefree polynomial has at most one root at zero.
    if rem.degree().unwrap_or(0) >= 1 && rem.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rem = rem
            .divide_exact(&Poly::from_ints(&[0, 1]))
            .expect("zero constant term");
    }

    if rem.degree().unwrap_or(0) >= 1 {
        // Clear denominators: candidates are ±p/q with p | a0, q | lead.
        let mut lcm = BigInt::from(1);
        for c in rem.coeffs() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let ints: Vec<BigInt> = rem
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let a0 = ints.first().cloned().unwrap_or_else(BigInt::zero);
        let lead = ints.last().cloned().unwrap_or_else(BigInt::zero);
        if let (Some(ps), Some(qs)) = (small_divisors(&a0), small_divisors(&lead)) {
            'candidates: for &pn in &ps {
                for &qn in &qs {
                    for sign in [1i64, -1] {
                        if rem.degree().unwrap_or(0) == 0 {
                            break 'candidates;
                        }
                        let cand = Rational::from_big(
                            BigInt::from(sign) * BigInt::from(pn),
                            BigInt::from(qn),
                        );
                        if rem.eval(&cand).is_zero() {
                            let factor = Poly::new(vec![-&cand, Rational::one()]);
                            rem = rem.divide_exact(&factor).expect("verified root");
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    (roots, rem)
}

/// Rounds `x` to the nearest rational with denominator ≤ `max_den` via
/// continued fractions.
fn rationalize(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if q1 > max_den as i128 {
            break;
        }
        let approx = p1 as f64 / q1 as f64;
        if (x - approx).abs() <= 1e-9 * x.abs().max(1.0) {
            return Some(Rational::from_big(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let (p2, q2) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// Snaps a float root to a nearby Gaussian rational if the polynomial
/// vanishes there exactly.
pub(crate) fn snap_to_gaussian(p: &Poly, z: Complex64) -> Option<ComplexRational> {
    let re = rationalize(z.re, 1_000_000)?;
    let im = rationalize(z.im, 1_000_000)?;
    let cand = ComplexRational::new(re, im);
    p.eval_complex(&cand).is_zero().then_some(cand)
}

fn horner_both(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial with the given ascending
/// coefficients (leading entry nonzero), by Aberth–Ehrlich iteration.
pub(crate) fn aberth_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|&c| Complex64::new(c / lead, 0.0))
        .collect();
    if deg == 1 {
        return vec![-monic[0]];
    }

    // Cauchy bound on root magnitude, centered at the root mean.
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let center = -monic[deg - 1] / (deg as f64);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (deg as f64) + 0.45;
            center + Complex64::from_polar(0.65 * radius, angle)
        })
        .collect();

    for _ in 0..400 {
        let mut moved = 0.0f64;
        for j in 0..deg {
            let (p, dp) = horner_both(&monic, z[j]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 {
                p / dp
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..deg {
                if k != j {
                    sum += (z[j] - z[k]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let delta = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            z[j] -= delta;
            moved = moved.max(delta.norm() / (1.0 + z[j].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }

    // Newton polish tightens each root to the f64 noise floor.
    for zj in z.iter_mut() {
        for _ in 0..6 {
            let (p, dp) = horner_both(&monic, *zj);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            *zj -= p / dp;
        }
    }
    z
}
