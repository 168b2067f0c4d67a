//! Dense row-major matrices over an exact scalar.

use std::fmt;

use num_complex::Complex64;

use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::poly::{FieldScalar, Poly, RingScalar};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<Poly>;
pub type CrMatrix = Matrix<ComplexRational>;

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MatrixData {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Stacks `blocks` of matrices with matching widths/heights into one
    /// matrix; every row of blocks must have the same total width.
    pub fn from_blocks(blocks: &[Vec<&Matrix<T>>]) -> Result<Self> {
        let mut rows: Vec<Vec<T>> = Vec::new();
        for band in blocks {
            if band.is_empty() {
                continue;
            }
            let height = band[0].rows;
            for b in band.iter() {
                if b.rows != height {
                    return Err(Error::ShapeMismatch(
                        "block heights differ within a band".into(),
                    ));
                }
            }
            for i in 0..height {
                let mut row = Vec::new();
                for b in band.iter() {
                    row.extend_from_slice(b.row(i));
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(rows)
    }
}

impl<T: RingScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} · {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = out.at(i, j).clone() + a.clone() * rhs.at(k, j).clone();
                    out.set(i, j, t);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self.at(i, j).clone() * v[j].clone();
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.map(|e| -e.clone()))
    }
}

impl<T: FieldScalar> Matrix<T> {
    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(r, j).clone();
                    m.set(p, j, b);
                    m.set(r, j, a);
                }
            }
            let inv = T::one() / m.at(r, col).clone();
            for j in col..m.cols {
                let t = m.at(r, j).clone() * inv.clone();
                m.set(r, j, t);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in col..m.cols {
                    let t = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                    m.set(i, j, t);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank_rref(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space; each vector v satisfies self·v = 0
    /// exactly. Basis size is cols − rank.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let piv_of_col: Vec<Option<usize>> = (0..self.cols)
            .map(|c| pivots.iter().position(|&p| p == c))
            .collect();
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl RatMatrix {
    pub fn from_ints(rows: Vec<Vec<i64>>) -> Self {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational::from).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.data
            .iter()
            .map(|r| Complex64::new(r.to_f64(), 0.0))
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_identity() {
        let a = RatMatrix::from_ints(vec![vec![1, 2], vec![3, 4]]);
        let i = RatMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let b = RatMatrix::from_ints(vec![vec![0, 1], vec![1, 0]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, RatMatrix::from_ints(vec![vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn zero_dimension_matrices() {
        let a = RatMatrix::zeros(2, 0);
        let b = RatMatrix::zeros(0, 3);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows(), c.cols()), (2, 3));
        assert!(c.is_zero());
        assert_eq!(a.rank_rref(), 0);
    }

    #[test]
    fn nullspace_exactness() {
        let m = RatMatrix::from_ints(vec![vec![1, -1, 0], vec![1, 0, 1], vec![0, 0, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let prod = m.matvec(v).unwrap();
            assert!(prod.iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn block_assembly() {
        let a = RatMatrix::from_ints(vec![vec![1]]);
        let b = RatMatrix::from_ints(vec![vec![2]]);
        let m = RatMatrix::from_blocks(&[vec![&a, &b], vec![&b, &a]]).unwrap();
        assert_eq!(m, RatMatrix::from_ints(vec![vec![1, 2], vec![2, 1]]));
    }
}
