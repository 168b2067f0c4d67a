//! Double-precision complex linear algebra: the only floating-point stage of
//! the pipeline. Used for matrix exponentials in closed-form simulation and
//! for null vectors of pencils evaluated at non-rational roots.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        CMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = out.at(i, j) + a * rhs.at(k, j);
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.cols {
                    acc += self.at(i, j) * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Induced 1-norm: max absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.at(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced ∞-norm: max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }
}

/// Solves A·X = B for square A by partially pivoted LU; `None` if singular
/// to working precision.
pub fn solve(a: &CMat, b: &CMat) -> Option<CMat> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.rows);
    let n = a.rows;
    let mut lu = a.clone();
    let mut rhs = b.clone();
    for k in 0..n {
        let (p, mag) = (k..n)
            .map(|i| (i, lu.at(i, k).norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if mag < 1e-300 {
            return None;
        }
        if p != k {
            for j in 0..n {
                let t = lu.at(p, j);
                lu.set(p, j, lu.at(k, j));
                lu.set(k, j, t);
            }
            for j in 0..rhs.cols {
                let t = rhs.at(p, j);
                rhs.set(p, j, rhs.at(k, j));
                rhs.set(k, j, t);
            }
        }
        let piv = lu.at(k, k);
        for i in (k + 1)..n {
            let f = lu.at(i, k) / piv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = lu.at(i, j) - f * lu.at(k, j);
                lu.set(i, j, t);
            }
            for j in 0..rhs.cols {
                let t = rhs.at(i, j) - f * rhs.at(k, j);
                rhs.set(i, j, t);
            }
        }
    }
    let mut x = CMat::zeros(n, rhs.cols);
    for j in 0..rhs.cols {
        for i in (0..n).rev() {
            let mut acc = rhs.at(i, j);
            for k in (i + 1)..n {
                acc -= lu.at(i, k) * x.at(k, j);
            }
            x.set(i, j, acc / lu.at(i, i));
        }
    }
    Some(x)
}

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn expm(a: &CMat) -> CMat {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    const THETA_13: f64 = 5.371920351148152;
    let norm = a.norm_one();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new((0.5f64).powi(s as i32), 0.0));

    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let re = |x: f64| Complex64::new(x, 0.0);
    let id = CMat::identity(n);
    let a2 = scaled.mul(&scaled);
    let a4 = a2.mul(&a2);
    let a6 = a2.mul(&a4);

    let u_inner = a6
        .scale(re(B[13]))
        .add(&a4.scale(re(B[11])))
        .add(&a2.scale(re(B[9])));
    let u_poly = a6
        .mul(&u_inner)
        .add(&a6.scale(re(B[7])))
        .add(&a4.scale(re(B[5])))
        .add(&a2.scale(re(B[3])))
        .add(&id.scale(re(B[1])));
    let u = scaled.mul(&u_poly);

    let v_inner = a6
        .scale(re(B[12]))
        .add(&a4.scale(re(B[10])))
        .add(&a2.scale(re(B[8])));
    let v = a6
        .mul(&v_inner)
        .add(&a6.scale(re(B[6])))
        .add(&a4.scale(re(B[4])))
        .add(&a2.scale(re(B[2])))
        .add(&id.scale(re(B[0])));

    let mut x = solve(&v.sub(&u), &v.add(&u)).expect("Padé denominator is nonsingular");
    for _ in 0..s {
        x = x.mul(&x);
    }
    x
}

/// Right null vector of a (possibly rectangular) matrix via complete-pivot
/// elimination. Returns `None` when every pivot stays above `gate`
/// (numerically full column rank). The returned vector is scaled so its
/// largest-magnitude component is exactly 1.
pub fn null_vector(a: &CMat, gate: f64) -> Option<Vec<Complex64>> {
    let rows = a.rows;
    let cols = a.cols;
    if cols == 0 {
        return None;
    }
    let mut u = a.clone();
    let mut perm: Vec<usize> = (0..cols).collect();
    let steps = rows.min(cols);
    let mut rank = steps;
    for k in 0..steps {
        let mut best = (k, k, 0.0f64);
        for i in k..rows {
            for j in k..cols {
                let m = u.at(i, j).norm();
                if m > best.2 {
                    best = (i, j, m);
                }
            }
        }
        if best.2 <= gate {
            rank = k;
            break;
        }
        let (pi, pj, _) = best;
        if pi != k {
            for j in 0..cols {
                let t = u.at(pi, j);
                u.set(pi, j, u.at(k, j));
                u.set(k, j, t);
            }
        }
        if pj != k {
            for i in 0..rows {
                let t = u.at(i, pj);
                u.set(i, pj, u.at(i, k));
                u.set(i, k, t);
            }
            perm.swap(k, pj);
        }
        let piv = u.at(k, k);
        for i in (k + 1)..rows {
            let f = u.at(i, k) / piv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..cols {
                let t = u.at(i, j) - f * u.at(k, j);
                u.set(i, j, t);
            }
        }
    }
    if rank == cols {
        return None;
    }
    // Free variable at permuted position `rank`; back-substitute.
    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    x[rank] = Complex64::new(1.0, 0.0);
    for i in (0..rank).rev() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (i + 1)..cols {
            acc += u.at(i, j) * x[j];
        }
        x[i] = -acc / u.at(i, i);
    }
    let mut v = vec![Complex64::new(0.0, 0.0); cols];
    for (pos, &orig) in perm.iter().enumerate() {
        v[orig] = x[pos];
    }
    let mut arg = 0;
    for (i, e) in v.iter().enumerate() {
        if e.norm() > v[arg].norm() {
            arg = i;
        }
    }
    let top = v[arg];
    for e in v.iter_mut() {
        *e /= top;
    }
    Some(v)
}
