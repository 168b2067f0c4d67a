//! Fraction-free rank computation and pointwise instantiation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::complex::ComplexRational;
use crate::poly::Poly;
use crate::rational::Rational;

use super::mat::{CrMatrix, PolyMatrix, RatMatrix};

/// Exact rank over ℚ by fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix.
pub fn rat_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let mut lcm = BigInt::from(1);
            for e in m.row(i) {
                lcm = lcm.lcm(e.denom());
            }
            m.row(i)
                .iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect()
        })
        .collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        // Smallest-magnitude nonzero pivot keeps intermediate growth down.
        let mut pivot: Option<(usize, usize)> = None;
        for i in step..rows {
            for j in step..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
        }
        for i in (step + 1)..rows {
            for j in (step + 1)..cols {
                let num = &a[i][j] * &a[step][step] - &a[i][step] * &a[step][j];
                a[i][j] = &num / &prev;
            }
            a[i][step] = BigInt::zero();
        }
        prev = a[step][step].clone();
        rank += 1;
    }
    rank
}

/// Basis of the exact right null space over ℚ.
pub fn rat_nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.nullspace()
}

/// Normal rank of a polynomial matrix: its rank over ℚ(λ), attained at all
/// but finitely many λ.
pub fn poly_rank(m: &PolyMatrix) -> usize {
    poly_rank_with_pivots(m).0
}

/// Fraction-free elimination with polynomial pivots. Also returns the pivot
/// polynomials encountered: the rank is attained at every λ avoiding their
/// roots.
pub fn poly_rank_with_pivots(m: &PolyMatrix) -> (usize, Vec<Poly>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Poly>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        // Lowest degree first, ties by smallest coefficient height.
        let mut pivot: Option<(usize, usize)> = None;
        for i in step..rows {
            for j in step..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => {
                        let (d_new, d_old) = (a[i][j].degree(), a[pi][pj].degree());
                        d_new < d_old
                            || (d_new == d_old
                                && a[i][j].coeff_height() < a[pi][pj].coeff_height())
                    }
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
        }
        for i in (step + 1)..rows {
            for j in (step + 1)..cols {
                let num = &(&a[i][j] * &a[step][step]) - &(&a[i][step] * &a[step][j]);
                a[i][j] = num
                    .divide_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            a[i][step] = Poly::zero();
        }
        prev = a[step][step].clone();
        pivots.push(prev.clone());
        rank += 1;
    }
    (rank, pivots)
}

/// Entrywise evaluation of a polynomial matrix at an exact complex point.
pub fn eval_matrix(m: &PolyMatrix, z: &ComplexRational) -> CrMatrix {
    m.map(|p| p.eval_complex(z))
}

/// Entrywise double-precision evaluation (row-major).
pub fn eval_matrix_c64(m: &PolyMatrix, z: Complex64) -> Vec<Complex64> {
    m.entries()
        .iter()
        .map(|p| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.coeffs().iter().rev() {
                acc = acc * z + Complex64::new(c.to_f64(), 0.0);
            }
            acc
        })
        .collect()
}
