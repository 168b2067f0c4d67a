//! Seeded generators for random and constructed system pairs, plus the
//! brute-force determinant oracle. Everything here is deterministic given
//! the seed: the stream comes from a self-contained SplitMix64, so results
//! never shift under dependency upgrades.

use crate::complex::ComplexRational;
use crate::decision::Verdict;
use crate::error::{Error, Result};
use crate::linalg::{poly_det, RatMatrix};
use crate::model::{CombinedSystem, LtiSystem, SystemPair};
use crate::rational::Rational;
use crate::witness::{Witness, WitnessData};

/// SplitMix64: tiny, stable, good enough for structured test generation.
#[derive(Debug, Clone)]
pub struct Prng(u64);

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from 0..n (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % (n as u64)) as usize
    }

    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn pick<'a, T>(&mut self, pool: &'a [T]) -> &'a T {
        &pool[self.below(pool.len())]
    }
}

/// Configuration of the random-pair stream.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub seed: u64,
    pub n1_range: (usize, usize),
    pub n2_range: (usize, usize),
    pub m_range: (usize, usize),
    pub k_range: (usize, usize),
    pub entry_pool: Vec<Rational>,
    pub count: usize,
}

impl GenConfig {
    /// Desk-scale defaults: n_i ≤ 3, m, k ≤ 2, entries in {−2..2}.
    pub fn desk_scale(seed: u64, count: usize) -> Self {
        GenConfig {
            seed,
            n1_range: (1, 3),
            n2_range: (1, 3),
            m_range: (1, 2),
            k_range: (1, 2),
            entry_pool: (-2..=2).map(Rational::from).collect(),
            count,
        }
    }
}

fn random_matrix(prng: &mut Prng, rows: usize, cols: usize, pool: &[Rational]) -> RatMatrix {
    let data: Vec<Rational> = (0..rows * cols).map(|_| prng.pick(pool).clone()).collect();
    RatMatrix::new(rows, cols, data).expect("consistent dims")
}

fn random_system(
    prng: &mut Prng,
    n: usize,
    m: usize,
    k: usize,
    pool: &[Rational],
) -> LtiSystem {
    LtiSystem::new(
        random_matrix(prng, n, n, pool),
        random_matrix(prng, n, m, pool),
        random_matrix(prng, k, n, pool),
        random_matrix(prng, k, m, pool),
    )
    .expect("generated shapes are consistent")
}

/// Reproducible pseudo-random pairs; dimension invariants hold by
/// construction.
pub fn gen_random_pairs(cfg: &GenConfig) -> Vec<SystemPair> {
    assert!(!cfg.entry_pool.is_empty(), "entry pool must be nonempty");
    assert!(cfg.k_range.0 >= 1, "k must be at least 1");
    let mut prng = Prng::new(cfg.seed);
    (0..cfg.count)
        .map(|_| {
            let n1 = prng.range_inclusive(cfg.n1_range.0, cfg.n1_range.1);
            let n2 = prng.range_inclusive(cfg.n2_range.0, cfg.n2_range.1);
            let m = prng.range_inclusive(cfg.m_range.0, cfg.m_range.1);
            let k = prng.range_inclusive(cfg.k_range.0, cfg.k_range.1);
            let s1 = random_system(&mut prng, n1, m, k, &cfg.entry_pool);
            let s2 = random_system(&mut prng, n2, m, k, &cfg.entry_pool);
            SystemPair::new(s1, s2).expect("matching m and k")
        })
        .collect()
}

/// Reproducible single systems drawn from the same dimension ranges
/// (n from n1_range).
pub fn gen_random_systems(cfg: &GenConfig) -> Vec<LtiSystem> {
    assert!(!cfg.entry_pool.is_empty(), "entry pool must be nonempty");
    let mut prng = Prng::new(cfg.seed);
    (0..cfg.count)
        .map(|_| {
            let n = prng.range_inclusive(cfg.n1_range.0, cfg.n1_range.1);
            let m = prng.range_inclusive(cfg.m_range.0, cfg.m_range.1);
            let k = prng.range_inclusive(cfg.k_range.0, cfg.k_range.1);
            random_system(&mut prng, n, m, k, &cfg.entry_pool)
        })
        .collect()
}

fn nonzero_vector(prng: &mut Prng, len: usize, pool: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..len).map(|_| prng.pick(pool).clone()).collect();
    if v.iter().all(|e| e.is_zero()) {
        v[0] = Rational::one();
    }
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// A pair with known ground truth.
#[derive(Debug, Clone)]
pub struct PlantedPair {
    pub pair: SystemPair,
    pub witness: Witness,
}

/// Constructs an indistinguishable pair by inverting the pencil condition:
/// λ₀, X₀ = (x₁₀; x₂₀) and ξ are chosen first, then A₁, A₂ receive exact
/// rank-one corrections so that (A−λ₀I)X₀ + Bξ = 0, and each (C, G) row is
/// adjusted through C₂ so that CX₀ + Gξ = 0. The planted witness is exact
/// and certifiable by construction.
pub fn gen_indistinguishable_pair(seed: u64) -> PlantedPair {
    let mut prng = Prng::new(seed ^ 0xA5A5_5A5A_1234_FEDC);
    let pool: Vec<Rational> = (-2..=2).map(Rational::from).collect();
    let lambda_pool = [
        Rational::zero(),
        Rational::one(),
        Rational::from(-1),
        Rational::from(2),
        Rational::new(1, 2),
        Rational::new(-1, 2),
    ];

    let n1 = prng.range_inclusive(1, 3);
    let n2 = prng.range_inclusive(1, 3);
    let m = prng.range_inclusive(1, 2);
    let k = prng.range_inclusive(1, 2);
    let lambda0 = prng.pick(&lambda_pool).clone();

    let x10 = nonzero_vector(&mut prng, n1, &pool);
    let x20 = nonzero_vector(&mut prng, n2, &pool);
    let xi: Vec<Rational> = (0..m).map(|_| prng.pick(&pool).clone()).collect();

    let b1 = random_matrix(&mut prng, n1, m, &pool);
    let b2 = random_matrix(&mut prng, n2, m, &pool);

    // A_i ← A_i + t_i·x_i0ᵀ/(x_i0·x_i0) with t_i = −B_iξ − (A_i−λ₀I)x_i0.
    let fix_a = |prng: &mut Prng, n: usize, b: &RatMatrix, x0: &[Rational]| -> RatMatrix {
        let mut a = random_matrix(prng, n, n, &pool);
        let bxi = b.matvec(&xi).expect("b is n x m");
        let ax = a.matvec(x0).expect("a is n x n");
        let denom = dot(x0, x0);
        for i in 0..n {
            let t_i = &(-&bxi[i]) - &(&ax[i] - &(&lambda0 * &x0[i]));
            for j in 0..n {
                let corr = &(&t_i * &x0[j]) / &denom;
                let v = a.at(i, j) + &corr;
                a.set(i, j, v);
            }
        }
        a
    };
    let a1 = fix_a(&mut prng, n1, &b1, &x10);
    let a2 = fix_a(&mut prng, n2, &b2, &x20);

    let c1 = random_matrix(&mut prng, k, n1, &pool);
    let mut c2 = random_matrix(&mut prng, k, n2, &pool);
    let g1 = random_matrix(&mut prng, k, m, &pool);
    let g2 = random_matrix(&mut prng, k, m, &pool);

    // Row correction through C₂: d_j = C₁[j]x₁₀ − C₂[j]x₂₀ + (G₁−G₂)[j]ξ.
    let denom = dot(&x20, &x20);
    for j in 0..k {
        let d_j = &(&dot(c1.row(j), &x10) - &dot(c2.row(j), &x20))
            + &(&dot(g1.row(j), &xi) - &dot(g2.row(j), &xi));
        for col in 0..n2 {
            let corr = &(&d_j * &x20[col]) / &denom;
            let v = c2.at(j, col) + &corr;
            c2.set(j, col, v);
        }
    }

    let s1 = LtiSystem::new(a1, b1, c1, g1).expect("shapes consistent");
    let s2 = LtiSystem::new(a2, b2, c2, g2).expect("shapes consistent");
    let pair = SystemPair::new(s1, s2).expect("matching m and k");

    let witness = Witness {
        data: WitnessData::Exact {
            lambda0: ComplexRational::from_real(lambda0),
            xi: xi.into_iter().map(ComplexRational::from_real).collect(),
            x10: x10.into_iter().map(ComplexRational::from_real).collect(),
            x20: x20.into_iter().map(ComplexRational::from_real).collect(),
        },
        residual: 0.0,
    };
    debug_assert!(planted_null_vector_checks(&pair, &witness));
    PlantedPair { pair, witness }
}

/// Conjugate-pair embedding: plants λ₀ = i into a real pair (n₁ = n₂ = 2).
/// The complex witness certifies, and so do its real and imaginary parts.
pub fn gen_indistinguishable_pair_complex(seed: u64) -> PlantedPair {
    let mut prng = Prng::new(seed ^ 0x0F0F_F0F0_55AA_33CC);
    let pool: Vec<Rational> = (-2..=2).map(Rational::from).collect();
    let n = 2;
    let m = prng.range_inclusive(1, 2);
    let k = prng.range_inclusive(1, 2);

    // x_i0 = u + iv with [u v] invertible.
    let basis = |prng: &mut Prng| -> (Vec<Rational>, Vec<Rational>) {
        loop {
            let u = nonzero_vector(prng, n, &pool);
            let v = nonzero_vector(prng, n, &pool);
            let det = &(&u[0] * &v[1]) - &(&u[1] * &v[0]);
            if !det.is_zero() {
                return (u, v);
            }
        }
    };
    let (u1, v1) = basis(&mut prng);
    let (u2, v2) = basis(&mut prng);
    let xi_re: Vec<Rational> = (0..m).map(|_| prng.pick(&pool).clone()).collect();
    let xi_im: Vec<Rational> = (0..m).map(|_| prng.pick(&pool).clone()).collect();

    let b1 = random_matrix(&mut prng, n, m, &pool);
    let b2 = random_matrix(&mut prng, n, m, &pool);

    // (A − iI)(u + iv) + B(ξ_re + iξ_im) = 0 splits into
    // A·u = −v − B·ξ_re and A·v = u − B·ξ_im, so A = [r s]·[u v]⁻¹.
    let solve_a = |b: &RatMatrix, u: &[Rational], v: &[Rational]| -> RatMatrix {
        let b_re = b.matvec(&xi_re).expect("dims");
        let b_im = b.matvec(&xi_im).expect("dims");
        let r: Vec<Rational> = (0..n).map(|i| &(-&v[i]) - &b_re[i]).collect();
        let s: Vec<Rational> = (0..n).map(|i| &u[i] - &b_im[i]).collect();
        let det = &(&u[0] * &v[1]) - &(&u[1] * &v[0]);
        // inv([u v]) = adj/det with columns u, v.
        let inv = [
            [&v[1] / &det, &(-&v[0]) / &det],
            [&(-&u[1]) / &det, &u[0] / &det],
        ];
        let mut a = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let val = &(&r[i] * &inv[0][j]) + &(&s[i] * &inv[1][j]);
                a.set(i, j, val);
            }
        }
        a
    };
    let a1 = solve_a(&b1, &u1, &v1);
    let a2 = solve_a(&b2, &u2, &v2);

    let c1 = random_matrix(&mut prng, k, n, &pool);
    let mut c2 = RatMatrix::zeros(k, n);
    let g1 = random_matrix(&mut prng, k, m, &pool);
    let g2 = random_matrix(&mut prng, k, m, &pool);

    // Solve each C₂ row from C₂[j]·x₂₀ = C₁[j]·x₁₀ + (G₁−G₂)[j]·ξ (complex).
    let det2 = &(&u2[0] * &v2[1]) - &(&u2[1] * &v2[0]);
    for j in 0..k {
        let w_re = &dot(c1.row(j), &u1) + &(&dot(g1.row(j), &xi_re) - &dot(g2.row(j), &xi_re));
        let w_im = &dot(c1.row(j), &v1) + &(&dot(g1.row(j), &xi_im) - &dot(g2.row(j), &xi_im));
        // C₂[j]·[u₂ v₂] = [w_re w_im]  ⇒  C₂[j] = [w_re w_im]·[u₂ v₂]⁻¹.
        let c_0 = &(&(&w_re * &v2[1]) - &(&w_im * &u2[1])) / &det2;
        let c_1 = &(&(&w_im * &u2[0]) - &(&w_re * &v2[0])) / &det2;
        c2.set(j, 0, c_0);
        c2.set(j, 1, c_1);
    }

    let s1 = LtiSystem::new(a1, b1, c1, g1).expect("shapes consistent");
    let s2 = LtiSystem::new(a2, b2, c2, g2).expect("shapes consistent");
    let pair = SystemPair::new(s1, s2).expect("matching m and k");

    let cr = |re: &Rational, im: &Rational| ComplexRational::new(re.clone(), im.clone());
    let witness = Witness {
        data: WitnessData::Exact {
            lambda0: ComplexRational::i(),
            xi: xi_re.iter().zip(&xi_im).map(|(a, b)| cr(a, b)).collect(),
            x10: u1.iter().zip(&v1).map(|(a, b)| cr(a, b)).collect(),
            x20: u2.iter().zip(&v2).map(|(a, b)| cr(a, b)).collect(),
        },
        residual: 0.0,
    };
    debug_assert!(planted_null_vector_checks(&pair, &witness));
    PlantedPair { pair, witness }
}

/// Exact verification that the planted witness is a pencil null vector.
fn planted_null_vector_checks(pair: &SystemPair, w: &Witness) -> bool {
    let WitnessData::Exact {
        lambda0,
        xi,
        x10,
        x20,
    } = &w.data
    else {
        return false;
    };
    let cs = pair.combine();
    let pencil = crate::linalg::eval_matrix(&cs.pencil(), lambda0);
    let mut v: Vec<ComplexRational> = Vec::new();
    v.extend(x10.iter().cloned());
    v.extend(x20.iter().cloned());
    v.extend(xi.iter().cloned());
    match pencil.matvec(&v) {
        Ok(out) => out.iter().all(|e| e.is_zero()),
        Err(_) => false,
    }
}

/// Independent verdict for square pencils (k = m): full column rank for all
/// λ ⇔ the cofactor-expansion determinant is a nonzero constant.
pub fn oracle_determinant_decision(cs: &CombinedSystem) -> Result<Verdict> {
    let k = cs.output_dim();
    let m = cs.input_dim();
    if k != m {
        return Err(Error::NonSquarePencil { k, m });
    }
    let det = poly_det(&cs.pencil())?;
    if !det.is_zero() && det.is_constant() {
        Ok(Verdict::Distinguishable)
    } else {
        Ok(Verdict::Indistinguishable)
    }
}
