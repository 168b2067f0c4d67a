//! Determinants and determinantal divisors by cofactor expansion.
//!
//! Deliberately independent of the elimination code: this is the oracle side
//! of the dual-route rank checks. Exponential cost, so gated to small
//! matrices.

use crate::error::{Error, Result};
use crate::poly::Poly;

use super::mat::PolyMatrix;

pub(crate) const ORACLE_DIM_LIMIT: usize = 8;

/// Determinant of a square polynomial matrix by recursive cofactor
/// expansion along the first remaining row.
pub fn poly_det(m: &PolyMatrix) -> Result<Poly> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > ORACLE_DIM_LIMIT {
        return Err(Error::OracleTooLarge(m.rows(), ORACLE_DIM_LIMIT));
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    Ok(det_rec(m, 0, &cols))
}

fn det_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (idx, &col) in cols.iter().enumerate() {
        let e = m.at(row, col);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != col)
            .collect();
        let sub = det_rec(m, row + 1, &rest);
        let term = &sub * e;
        acc = if idx % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Monic gcd of all order×order minors (the order-th determinantal divisor);
/// zero if every minor vanishes identically. `order = 0` returns 1.
pub fn minor_gcd(m: &PolyMatrix, order: usize) -> Result<Poly> {
    let min_dim = m.rows().min(m.cols());
    if order > min_dim {
        return Err(Error::OrderOutOfRange {
            order,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if min_dim > ORACLE_DIM_LIMIT {
        return Err(Error::OracleTooLarge(min_dim, ORACLE_DIM_LIMIT));
    }
    if order == 0 {
        return Ok(Poly::one());
    }
    let mut g = Poly::zero();
    for rows in combinations(m.rows(), order) {
        for cols in combinations(m.cols(), order) {
            let sub = submatrix(m, &rows, &cols);
            let d = poly_det(&sub)?;
            if d.is_zero() {
                continue;
            }
            g = if g.is_zero() { d.monic() } else { g.gcd(&d)? };
            if g.is_constant() {
                return Ok(Poly::one());
            }
        }
    }
    Ok(g)
}

fn submatrix(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    let data: Vec<Poly> = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| m.at(i, j).clone()))
        .collect();
    PolyMatrix::new(rows.len(), cols.len(), data).expect("consistent selection")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
