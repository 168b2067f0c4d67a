//! State-space systems, pair combination, and construction of the matrices
//! the rank tests run on.
//!
//! A pair (S₁, S₂) sharing input and output spaces is folded into one
//! combined system whose output is the difference y₁ − y₂:
//! A = diag(A₁, A₂), B = [B₁; B₂], C = [C₁ −C₂], G = G₁ − G₂. The pair is
//! distinguishable exactly when no nonzero (X₀, u) drives the combined
//! output to zero identically.

use crate::error::{Error, Result};
use crate::linalg::{PolyMatrix, RatMatrix};
use crate::poly::Poly;
use crate::rational::Rational;

/// One subsystem: ẋ = Ax + Bu, y = Cx + Gu with A n×n, B n×m, C k×n, G k×m.
#[derive(Debug, Clone, PartialEq)]
pub struct LtiSystem {
    a: RatMatrix,
    b: RatMatrix,
    c: RatMatrix,
    g: RatMatrix,
}

impl LtiSystem {
    pub fn new(a: RatMatrix, b: RatMatrix, c: RatMatrix, g: RatMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "A must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let m = b.cols();
        if b.rows() != n {
            return Err(Error::ShapeMismatch(format!(
                "B must be {n}x{m}, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        let k = c.rows();
        if c.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "C must be {k}x{n}, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        if k == 0 {
            return Err(Error::ShapeMismatch("C must have at least one row".into()));
        }
        if g.rows() != k || g.cols() != m {
            return Err(Error::ShapeMismatch(format!(
                "G must be {k}x{m}, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        Ok(LtiSystem { a, b, c, g })
    }

    /// Scalar system from single coefficients (n = m = k = 1).
    pub fn scalar(a: i64, b: i64, c: i64, g: i64) -> Self {
        LtiSystem::new(
            RatMatrix::from_ints(vec![vec![a]]),
            RatMatrix::from_ints(vec![vec![b]]),
            RatMatrix::from_ints(vec![vec![c]]),
            RatMatrix::from_ints(vec![vec![g]]),
        )
        .expect("scalar shapes are consistent")
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn c(&self) -> &RatMatrix {
        &self.c
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }

    /// The shifted system (A − zI, B, C, G).
    pub fn shift_a(&self, z: &Rational) -> Self {
        let n = self.state_dim();
        let mut a = self.a.clone();
        for i in 0..n {
            let t = a.at(i, i) - z;
            a.set(i, i, t);
        }
        LtiSystem {
            a,
            b: self.b.clone(),
            c: self.c.clone(),
            g: self.g.clone(),
        }
    }
}

/// Two subsystems sharing input dimension m and output dimension k; the
/// state dimensions n₁, n₂ may differ.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemPair {
    s1: LtiSystem,
    s2: LtiSystem,
}

impl SystemPair {
    pub fn new(s1: LtiSystem, s2: LtiSystem) -> Result<Self> {
        if s1.input_dim() != s2.input_dim() {
            return Err(Error::ShapeMismatch(format!(
                "input dimensions differ: m1 = {}, m2 = {}",
                s1.input_dim(),
                s2.input_dim()
            )));
        }
        if s1.output_dim() != s2.output_dim() {
            return Err(Error::ShapeMismatch(format!(
                "output dimensions differ: k1 = {}, k2 = {}",
                s1.output_dim(),
                s2.output_dim()
            )));
        }
        Ok(SystemPair { s1, s2 })
    }

    pub fn s1(&self) -> &LtiSystem {
        &self.s1
    }

    pub fn s2(&self) -> &LtiSystem {
        &self.s2
    }

    pub fn swapped(&self) -> SystemPair {
        SystemPair {
            s1: self.s2.clone(),
            s2: self.s1.clone(),
        }
    }

    pub fn combine(&self) -> CombinedSystem {
        combine(self)
    }
}

/// The stacked difference system.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedSystem {
    a: RatMatrix,
    b: RatMatrix,
    c: RatMatrix,
    g: RatMatrix,
    n1: usize,
    n2: usize,
}

/// Builds the combined system: block-diagonal A, stacked B, C = [C₁ −C₂],
/// G = G₁ − G₂.
pub fn combine(pair: &SystemPair) -> CombinedSystem {
    let (s1, s2) = (&pair.s1, &pair.s2);
    let (n1, n2) = (s1.state_dim(), s2.state_dim());
    let m = s1.input_dim();
    let k = s1.output_dim();

    let mut a = RatMatrix::zeros(n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            a.set(i, j, s1.a.at(i, j).clone());
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            a.set(n1 + i, n1 + j, s2.a.at(i, j).clone());
        }
    }

    let mut b = RatMatrix::zeros(n1 + n2, m);
    for i in 0..n1 {
        for j in 0..m {
            b.set(i, j, s1.b.at(i, j).clone());
        }
    }
    for i in 0..n2 {
        for j in 0..m {
            b.set(n1 + i, j, s2.b.at(i, j).clone());
        }
    }

    let mut c = RatMatrix::zeros(k, n1 + n2);
    for i in 0..k {
        for j in 0..n1 {
            c.set(i, j, s1.c.at(i, j).clone());
        }
        for j in 0..n2 {
            c.set(i, n1 + j, -s2.c.at(i, j));
        }
    }

    let g = s1.g.sub(&s2.g).expect("pair invariant: G shapes match");

    CombinedSystem {
        a,
        b,
        c,
        g,
        n1,
        n2,
    }
}

impl CombinedSystem {
    /// Direct construction from already-combined blocks. Validates shapes
    /// and the block-diagonal structure of A.
    pub fn from_parts(
        a: RatMatrix,
        b: RatMatrix,
        c: RatMatrix,
        g: RatMatrix,
        n1: usize,
        n2: usize,
    ) -> Result<Self> {
        let n = n1 + n2;
        if a.rows() != n || a.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "A must be {n}x{n}, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        for i in 0..n1 {
            for j in n1..n {
                if !a.at(i, j).is_zero() || !a.at(j, i).is_zero() {
                    return Err(Error::ShapeMismatch(
                        "A must be block-diagonal over the n1/n2 split".into(),
                    ));
                }
            }
        }
        let m = b.cols();
        if b.rows() != n {
            return Err(Error::ShapeMismatch(format!(
                "B must be {n}x{m}, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        let k = c.rows();
        if k == 0 || c.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "C must be k x {n} with k >= 1, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        if g.rows() != k || g.cols() != m {
            return Err(Error::ShapeMismatch(format!(
                "G must be {k}x{m}, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        Ok(CombinedSystem { a, b, c, g, n1, n2 })
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn c(&self) -> &RatMatrix {
        &self.c
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn state_dim(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }

    /// A − λI as a polynomial matrix.
    fn a_minus_lambda(&self) -> PolyMatrix {
        let n = self.state_dim();
        let mut m = self.a.map(|e| Poly::constant(e.clone()));
        for i in 0..n {
            let t = &Poly::constant(self.a.at(i, i).clone()) - &Poly::x();
            m.set(i, i, t);
        }
        m
    }

    /// The stacked λ-matrix with block rows [C(A−λI)^j | C(A−λI)^{j−1}B]
    /// for j = 0..=n₁+n₂ (the j = 0 right block is G). Size
    /// ((n₁+n₂+1)·k) × (n₁+n₂+m); full column rank at every λ ∈ ℂ is
    /// equivalent to distinguishability.
    pub fn lambda_matrix(&self) -> PolyMatrix {
        let n = self.state_dim();
        let m = self.input_dim();
        let k = self.output_dim();
        let a_l = self.a_minus_lambda();
        let b_poly = self.b.map(|e| Poly::constant(e.clone()));
        let c_poly = self.c.map(|e| Poly::constant(e.clone()));
        let g_poly = self.g.map(|e| Poly::constant(e.clone()));

        let mut out = PolyMatrix::zeros((n + 1) * k, n + m);
        // prev = C(A−λI)^{j−1}, left = C(A−λI)^j
        let mut prev = c_poly.clone();
        let mut left = c_poly;
        for j in 0..=n {
            let right = if j == 0 {
                g_poly.clone()
            } else {
                prev.mul(&b_poly).expect("inner dims match")
            };
            for r in 0..k {
                for col in 0..n {
                    out.set(j * k + r, col, left.at(r, col).clone());
                }
                for col in 0..m {
                    out.set(j * k + r, n + col, right.at(r, col).clone());
                }
            }
            prev = left.clone();
            if j < n {
                left = left.mul(&a_l).expect("inner dims match");
            }
        }
        out
    }

    /// The system pencil [C G; A−λI B]: (k+n₁+n₂) × (n₁+n₂+m), entries of
    /// degree ≤ 1. Full column rank at every λ ∈ ℂ is equivalent to the
    /// λ-matrix condition.
    pub fn pencil(&self) -> PolyMatrix {
        let n = self.state_dim();
        let m = self.input_dim();
        let k = self.output_dim();
        let a_l = self.a_minus_lambda();
        let mut out = PolyMatrix::zeros(k + n, n + m);
        for i in 0..k {
            for j in 0..n {
                out.set(i, j, Poly::constant(self.c.at(i, j).clone()));
            }
            for j in 0..m {
                out.set(i, n + j, Poly::constant(self.g.at(i, j).clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                out.set(k + i, j, a_l.at(i, j).clone());
            }
            for j in 0..m {
                out.set(k + i, n + j, Poly::constant(self.b.at(i, j).clone()));
            }
        }
        out
    }

    /// Rational truncation with block rows [CA^j | CA^{j−1}B] for
    /// j = 0..=depth (the j = 0 right block is G). By Cayley–Hamilton its
    /// rank is stationary from depth n₁+n₂ on.
    pub fn truncated_matrix(&self, depth: usize) -> RatMatrix {
        let n = self.state_dim();
        let m = self.input_dim();
        let k = self.output_dim();
        let mut out = RatMatrix::zeros((depth + 1) * k, n + m);
        let mut prev = self.c.clone();
        let mut left = self.c.clone();
        for j in 0..=depth {
            let right = if j == 0 {
                self.g.clone()
            } else {
                prev.mul(&self.b).expect("inner dims match")
            };
            for r in 0..k {
                for col in 0..n {
                    out.set(j * k + r, col, left.at(r, col).clone());
                }
                for col in 0..m {
                    out.set(j * k + r, n + col, right.at(r, col).clone());
                }
            }
            prev = left.clone();
            if j < depth {
                left = left.mul(&self.a).expect("inner dims match");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexRational;
    use crate::linalg::{eval_matrix, rat_rank};

    fn worked_distinguishable() -> SystemPair {
        SystemPair::new(LtiSystem::scalar(0, 1, 1, 0), LtiSystem::scalar(1, 1, 1, 0)).unwrap()
    }

    fn worked_indistinguishable() -> SystemPair {
        SystemPair::new(LtiSystem::scalar(1, 1, 1, 0), LtiSystem::scalar(0, 0, 1, 0)).unwrap()
    }

    #[test]
    fn combine_identical_scalars() {
        let s = LtiSystem::scalar(0, 1, 1, 0);
        let cs = SystemPair::new(s.clone(), s).unwrap().combine();
        assert_eq!(*cs.a(), RatMatrix::from_ints(vec![vec![0, 0], vec![0, 0]]));
        assert_eq!(*cs.b(), RatMatrix::from_ints(vec![vec![1], vec![1]]));
        assert_eq!(*cs.c(), RatMatrix::from_ints(vec![vec![1, -1]]));
        assert_eq!(*cs.g(), RatMatrix::from_ints(vec![vec![0]]));
    }

    #[test]
    fn combine_block_placement() {
        let cs = worked_distinguishable().combine();
        assert_eq!(*cs.a(), RatMatrix::from_ints(vec![vec![0, 0], vec![0, 1]]));
        assert_eq!(*cs.b(), RatMatrix::from_ints(vec![vec![1], vec![1]]));
        assert_eq!(*cs.c(), RatMatrix::from_ints(vec![vec![1, -1]]));
    }

    #[test]
    fn combine_mixed_dimensions() {
        // n1 = 2, n2 = 1: A is 3x3 with 2x2 and 1x1 diagonal blocks.
        let s1 = LtiSystem::new(
            RatMatrix::from_ints(vec![vec![1, 2], vec![3, 4]]),
            RatMatrix::from_ints(vec![vec![1], vec![0]]),
            RatMatrix::from_ints(vec![vec![1, 0]]),
            RatMatrix::from_ints(vec![vec![0]]),
        )
        .unwrap();
        let s2 = LtiSystem::scalar(5, 1, 1, 0);
        let cs = SystemPair::new(s1, s2).unwrap().combine();
        assert_eq!(cs.state_dim(), 3);
        assert_eq!(
            *cs.a(),
            RatMatrix::from_ints(vec![vec![1, 2, 0], vec![3, 4, 0], vec![0, 0, 5]])
        );
    }

    #[test]
    fn shape_mismatch_names_matrix() {
        let bad = LtiSystem::new(
            RatMatrix::from_ints(vec![vec![0]]),
            RatMatrix::from_ints(vec![vec![1], vec![2]]),
            RatMatrix::from_ints(vec![vec![1]]),
            RatMatrix::from_ints(vec![vec![0]]),
        );
        let msg = bad.unwrap_err().to_string();
        assert!(msg.contains('B'), "message should name B: {msg}");
    }

    #[test]
    fn lambda_matrix_worked_pair() {
        // [[1,−1,0],[−λ, λ−1, 0],[λ², −(1−λ)², −1]]
        let m = worked_distinguishable().combine().lambda_matrix();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(*m.at(0, 0), Poly::one());
        assert_eq!(*m.at(0, 1), Poly::from_ints(&[-1]));
        assert_eq!(*m.at(0, 2), Poly::zero());
        assert_eq!(*m.at(1, 0), Poly::from_ints(&[0, -1]));
        assert_eq!(*m.at(1, 1), Poly::from_ints(&[-1, 1]));
        assert_eq!(*m.at(1, 2), Poly::zero());
        assert_eq!(*m.at(2, 0), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(*m.at(2, 1), Poly::from_ints(&[-1, 2, -1]));
        assert_eq!(*m.at(2, 2), Poly::from_ints(&[-1]));
    }

    #[test]
    fn pencil_worked_pairs() {
        let p = worked_distinguishable().combine().pencil();
        // [[1,−1,0],[−λ,0,1],[0,1−λ,1]]
        assert_eq!(*p.at(0, 0), Poly::one());
        assert_eq!(*p.at(0, 1), Poly::from_ints(&[-1]));
        assert_eq!(*p.at(0, 2), Poly::zero());
        assert_eq!(*p.at(1, 0), Poly::from_ints(&[0, -1]));
        assert_eq!(*p.at(1, 1), Poly::zero());
        assert_eq!(*p.at(1, 2), Poly::one());
        assert_eq!(*p.at(2, 0), Poly::zero());
        assert_eq!(*p.at(2, 1), Poly::from_ints(&[1, -1]));
        assert_eq!(*p.at(2, 2), Poly::one());

        let q = worked_indistinguishable().combine().pencil();
        // [[1,−1,0],[1−λ,0,1],[0,−λ,0]]
        assert_eq!(*q.at(1, 0), Poly::from_ints(&[1, -1]));
        assert_eq!(*q.at(2, 1), Poly::from_ints(&[0, -1]));
        assert_eq!(*q.at(2, 2), Poly::zero());
    }

    #[test]
    fn pencil_degree_structure() {
        let cs = worked_distinguishable().combine();
        let p = cs.pencil();
        let mut degree_one = 0;
        for e in p.entries() {
            let d = e.degree().unwrap_or(0);
            assert!(d <= 1);
            if d == 1 {
                degree_one += 1;
            }
        }
        assert_eq!(degree_one, cs.state_dim());
    }

    #[test]
    fn truncated_matrix_examples() {
        let cs = worked_distinguishable().combine();
        // depth 0 is [C | G]
        let t0 = cs.truncated_matrix(0);
        assert_eq!(t0, RatMatrix::from_ints(vec![vec![1, -1, 0]]));
        // depth n1+n2 has full rank 3 for the distinguishable pair
        let t = cs.truncated_matrix(cs.state_dim());
        assert_eq!(rat_rank(&t), 3);
    }

    #[test]
    fn pencil_instantiated_at_zero() {
        // Substituting λ = 0 into the indistinguishable pair's pencil gives
        // the rational matrix whose null vector is the worked witness.
        let p = worked_indistinguishable().combine().pencil();
        let at0 = eval_matrix(&p, &ComplexRational::zero());
        let expect = RatMatrix::from_ints(vec![vec![1, -1, 0], vec![1, 0, 1], vec![0, 0, 0]]);
        for i in 0..3 {
            for j in 0..3 {
                assert!(at0.at(i, j).is_real());
                assert_eq!(at0.at(i, j).re, *expect.at(i, j));
            }
        }
    }

    #[test]
    fn lambda_matrix_with_zero_dynamics_scales_by_minus_lambda() {
        // A = 0, B = 0, C = I, G = 0: block row j is [(−λ)^j·I | 0].
        let cs = CombinedSystem::from_parts(
            RatMatrix::zeros(2, 2),
            RatMatrix::zeros(2, 1),
            RatMatrix::identity(2),
            RatMatrix::zeros(2, 1),
            1,
            1,
        )
        .unwrap();
        let m = cs.lambda_matrix();
        assert_eq!((m.rows(), m.cols()), (6, 3));
        for j in 0..=2usize {
            let scale = Poly::monomial(Rational::from((-1i64).pow(j as u32)), j);
            for r in 0..2 {
                for c in 0..2 {
                    let want = if r == c { scale.clone() } else { Poly::zero() };
                    assert_eq!(*m.at(2 * j + r, c), want, "block {j} entry ({r},{c})");
                }
                assert_eq!(*m.at(2 * j + r, 2), Poly::zero());
            }
        }
    }

    #[test]
    fn lambda_matrix_at_zero_matches_truncation() {
        for pair in [worked_distinguishable(), worked_indistinguishable()] {
            let cs = pair.combine();
            let at0 = eval_matrix(&cs.lambda_matrix(), &ComplexRational::zero());
            let trunc = cs.truncated_matrix(cs.state_dim());
            assert_eq!(at0.rows(), trunc.rows());
            for i in 0..at0.rows() {
                for j in 0..at0.cols() {
                    assert!(at0.at(i, j).is_real());
                    assert_eq!(at0.at(i, j).re, *trunc.at(i, j));
                }
            }
        }
    }

    #[test]
    fn automation_pair_m_zero() {
        // B and G empty (m = 0): the pencil degenerates to [C; A−λI].
        let s1 = LtiSystem::new(
            RatMatrix::from_ints(vec![vec![1]]),
            RatMatrix::zeros(1, 0),
            RatMatrix::from_ints(vec![vec![1]]),
            RatMatrix::zeros(1, 0),
        )
        .unwrap();
        let s2 = LtiSystem::new(
            RatMatrix::from_ints(vec![vec![2]]),
            RatMatrix::zeros(1, 0),
            RatMatrix::from_ints(vec![vec![1]]),
            RatMatrix::zeros(1, 0),
        )
        .unwrap();
        let cs = SystemPair::new(s1, s2).unwrap().combine();
        assert_eq!(cs.input_dim(), 0);
        let p = cs.pencil();
        assert_eq!((p.rows(), p.cols()), (3, 2));
        let m = cs.lambda_matrix();
        assert_eq!((m.rows(), m.cols()), (3, 2));
    }
}
