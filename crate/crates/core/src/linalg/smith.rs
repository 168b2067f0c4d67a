//! Smith invariant factors of a polynomial matrix over ℚ[λ].
//!
//! Only the invariant-factor chain is computed; transformation matrices are
//! never retained. The full-column-rank-everywhere predicate reads off the
//! chain: rank = cols and the last factor constant.

use crate::error::Result;
use crate::poly::Poly;

use super::mat::PolyMatrix;
use super::minors::minor_gcd;

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantFactors {
    /// Normal rank over ℚ(λ).
    pub rank: usize,
    /// Monic chain d_1 | d_2 | … | d_rank.
    pub factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn last(&self) -> Option<&Poly> {
        self.factors.last()
    }

    /// True iff the matrix keeps full column rank at every λ ∈ ℂ.
    pub fn full_column_rank_everywhere(&self, cols: usize) -> bool {
        self.rank == cols && self.last().is_none_or(|d| d.is_constant() && !d.is_zero())
    }
}

/// Invariant factors by diagonalization with exact polynomial division.
pub fn invariant_factors(m: &PolyMatrix) -> InvariantFactors {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Poly>> = (0..rows).map(|i| m.row(i).to_vec()).collect();

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, k) else {
            break;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }

        loop {
            let mut dirty = false;

            // Clear column k with row operations; a nonzero remainder
            // becomes the new, lower-degree pivot.
            let mut i = k + 1;
            while i < rows {
                if a[i][k].is_zero() {
                    i += 1;
                    continue;
                }
                let (q, r) = a[i][k].divmod(&a[k][k]).expect("pivot nonzero");
                for j in 0..cols {
                    let t = &a[i][j] - &(&q * &a[k][j]);
                    a[i][j] = t;
                }
                if !r.is_zero() {
                    a.swap(i, k);
                    dirty = true;
                } else {
                    i += 1;
                }
            }

            // Clear row k with column operations.
            let mut j = k + 1;
            while j < cols {
                if a[k][j].is_zero() {
                    j += 1;
                    continue;
                }
                let (q, r) = a[k][j].divmod(&a[k][k]).expect("pivot nonzero");
                for row in a.iter_mut() {
                    let t = &row[j] - &(&q * &row[k]);
                    row[j] = t;
                }
                if !r.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(j, k);
                    }
                    dirty = true;
                } else {
                    j += 1;
                }
            }

            if dirty {
                continue;
            }
            // Column and row are clear. Enforce that the pivot divides the
            // whole remaining block, so the diagonal forms a chain.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| {
                    !a[i][j].is_zero()
                        && a[i][j].divide_exact(&a[k][k]).is_none()
                });
            match offender {
                Some((i, _)) => {
                    for j in 0..cols {
                        let t = &a[k][j] + &a[i][j];
                        a[k][j] = t;
                    }
                }
                None => break,
            }
        }

        a[k][k] = a[k][k].monic();
        k += 1;
    }

    let mut factors = Vec::new();
    for d in 0..k {
        if a[d][d].is_zero() {
            break;
        }
        factors.push(a[d][d].clone());
    }
    let result = InvariantFactors {
        rank: factors.len(),
        factors,
    };
    debug_assert!(crosscheck_against_minors(m, &result).unwrap_or(true));
    result
}

/// Lowest-degree nonzero entry of the trailing submatrix, ties broken by
/// coefficient height.
fn find_pivot(a: &[Vec<Poly>], k: usize) -> Option<(usize, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut best: Option<(usize, usize)> = None;
    for i in k..rows {
        for j in k..cols {
            if a[i][j].is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => {
                    let (dn, db) = (a[i][j].degree(), a[bi][bj].degree());
                    dn < db || (dn == db && a[i][j].coeff_height() < a[bi][bj].coeff_height())
                }
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Debug-mode redundancy: the product of the first r invariant factors must
/// equal the r-th determinantal divisor. Only run on small matrices.
fn crosscheck_against_minors(m: &PolyMatrix, inv: &InvariantFactors) -> Result<bool> {
    if m.rows().min(m.cols()) > 4 || m.rows().max(m.cols()) > 6 {
        return Ok(true);
    }
    let mut product = Poly::one();
    for (r, d) in inv.factors.iter().enumerate() {
        product = (&product * d).monic();
        if minor_gcd(m, r + 1)? != product {
            return Ok(false);
        }
    }
    if inv.rank < m.rows().min(m.cols()) && !minor_gcd(m, inv.rank + 1)?.is_zero() {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn identity_factors() {
        let m: PolyMatrix = PolyMatrix::identity(2);
        let inv = invariant_factors(&m);
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.factors, vec![Poly::one(), Poly::one()]);
        assert!(inv.full_column_rank_everywhere(2));
    }

    #[test]
    fn already_smith_diagonal() {
        // diag(λ, λ(λ−1)) is already in Smith form.
        let lambda = Poly::from_ints(&[0, 1]);
        let prod = &lambda * &Poly::from_ints(&[-1, 1]);
        let mut m = PolyMatrix::zeros(2, 2);
        m.set(0, 0, lambda.clone());
        m.set(1, 1, prod.clone());
        let inv = invariant_factors(&m);
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.factors, vec![lambda, prod]);
        assert!(!inv.full_column_rank_everywhere(2));
    }

    #[test]
    fn worked_indistinguishable_pencil() {
        // [[1,−1,0],[1−λ,0,1],[0,−λ,0]]: det = λ, lower divisors 1.
        let one = Poly::one();
        let m = Matrix::from_rows(vec![
            vec![one.clone(), Poly::from_ints(&[-1]), Poly::zero()],
            vec![Poly::from_ints(&[1, -1]), Poly::zero(), one.clone()],
            vec![Poly::zero(), Poly::from_ints(&[0, -1]), Poly::zero()],
        ])
        .unwrap();
        let inv = invariant_factors(&m);
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.factors[0], Poly::one());
        assert_eq!(inv.factors[1], Poly::one());
        assert_eq!(inv.factors[2], Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn divisibility_chain_holds() {
        // A dense matrix needing the chain-enforcement step.
        let lam = Poly::from_ints(&[0, 1]);
        let m = Matrix::from_rows(vec![
            vec![lam.clone(), Poly::one()],
            vec![Poly::one(), lam.clone()],
        ])
        .unwrap();
        let inv = invariant_factors(&m);
        assert_eq!(inv.rank, 2);
        for w in inv.factors.windows(2) {
            assert!(w[1].divide_exact(&w[0]).is_some());
        }
        // det = λ²−1 up to scale; d1·d2 must match it monic.
        let prod = (&inv.factors[0] * &inv.factors[1]).monic();
        assert_eq!(prod, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn rank_deficient_matrix() {
        // second row = λ · first row
        let lam = Poly::from_ints(&[0, 1]);
        let m = Matrix::from_rows(vec![
            vec![lam.clone(), Poly::one()],
            vec![Poly::from_ints(&[0, 0, 1]), lam.clone()],
        ])
        .unwrap();
        let inv = invariant_factors(&m);
        assert_eq!(inv.rank, 1);
        assert!(!inv.full_column_rank_everywhere(2));
    }
}
