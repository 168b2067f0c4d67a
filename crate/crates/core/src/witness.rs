//! Witness synthesis and certification for indistinguishable pairs.
//!
//! A witness is a tuple (λ₀, ξ, x₁₀, x₂₀) such that both subsystems,
//! started at x₁₀ and x₂₀ and driven by u(t) = e^{λ₀t}ξ, produce identical
//! outputs. Witnesses come from null vectors of the system pencil evaluated
//! at roots of the defect polynomial; exactness is kept whenever the root is
//! (Gaussian-)rational, and certified double precision is used otherwise.

use std::fmt;

use num_complex::Complex64;

use crate::complex::ComplexRational;
use crate::decision::Defect;
use crate::error::{Error, Result};
use crate::linalg::{eval_matrix, eval_matrix_c64};
use crate::model::{CombinedSystem, SystemPair};
use crate::numeric::{null_vector, CMat};
use crate::poly::Poly;
use crate::roots::{aberth_roots, exact_rational_roots, snap_to_gaussian};
use crate::signals::{simulate_with_scale, uniform_grid, PolyExpSignal};

/// A complex value that is exact when possible.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexScalar {
    Exact(ComplexRational),
    Approx(Complex64),
}

impl ComplexScalar {
    pub fn zero() -> Self {
        ComplexScalar::Exact(ComplexRational::zero())
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            ComplexScalar::Exact(z) => z.to_c64(),
            ComplexScalar::Approx(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexScalar::Exact(_))
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexScalar::Exact(z) => write!(f, "{z}"),
            ComplexScalar::Approx(z) => write!(f, "{z}"),
        }
    }
}

/// One certified root of the defect polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectRoot {
    pub value: ComplexScalar,
    /// |p(root)|, computed exactly at the stored value; 0 for exact roots.
    pub residual: f64,
}

/// Squarefree defect polynomial together with all of its complex roots.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectRoots {
    pub polynomial: Poly,
    pub roots: Vec<DefectRoot>,
}

/// Numeric gates; exact code paths ignore them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Pivot gate declaring the evaluated pencil rank-deficient (relative).
    pub rank_gate: f64,
    /// Admissible witness residual, relative to the pencil coefficient scale.
    pub residual: f64,
    /// Admissible simulated output deviation, relative to the output scale.
    pub simulation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_gate: 1e-8,
            residual: 1e-9,
            simulation: 1e-6,
        }
    }
}

/// All complex roots of the defect polynomial: squarefree reduction, exact
/// rational roots first, then Aberth iteration with per-root exact residual
/// bounds and Gaussian-rational snapping.
pub fn find_defect_roots(defect: &Poly) -> Result<DefectRoots> {
    if defect.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if defect.is_constant() {
        return Err(Error::ConstantDefect);
    }
    let sf = defect.squarefree_part()?;
    let _scale = sf
        .coeffs()
        .iter()
        .map(|c| c.to_f64().abs())
        .fold(0.0f64, f64::max);

    let (rational, rest) = exact_rational_roots(&sf);
    let mut exact: Vec<ComplexRational> = rational
        .into_iter()
        .map(ComplexRational::from_real)
        .collect();
    let mut approx: Vec<Complex64> = Vec::new();

    if rest.degree().unwrap_or(0) >= 1 {
        let coeffs: Vec<f64> = rest.coeffs().iter().map(|c| c.to_f64()).collect();
        for z in aberth_roots(&coeffs) {
            match snap_to_gaussian(&rest, z) {
                Some(g) => exact.push(g),
                None => approx.push(z),
            }
        }
    }

    exact.sort_by(|a, b| {
        (a.modulus_sq(), a.re.clone(), a.im.clone()).cmp(&(
            b.modulus_sq(),
            b.re.clone(),
            b.im.clone(),
        ))
    });
    approx.sort_by(|a, b| (a.norm(), a.re, a.im).partial_cmp(&(b.norm(), b.re, b.im)).unwrap());

    let mut roots: Vec<DefectRoot> = exact
        .into_iter()
        .map(|z| DefectRoot {
            value: ComplexScalar::Exact(z),
            residual: 0.0,
        })
        .collect();
    for z in approx {
        // True residual: exact evaluation at the dyadic root value.
        let v = ComplexRational::from_c64_exact(z)
            .map(|zc| sf.eval_complex(&zc).modulus_sq().to_f64().sqrt())
            .unwrap_or(f64::INFINITY);
        roots.push(DefectRoot {
            value: ComplexScalar::Approx(z),
            residual: v,
        });
    }
    Ok(DefectRoots {
        polynomial: sf,
        roots,
    })
}

/// Witness payload: exact whenever λ₀ is exact.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessData {
    Exact {
        lambda0: ComplexRational,
        xi: Vec<ComplexRational>,
        x10: Vec<ComplexRational>,
        x20: Vec<ComplexRational>,
    },
    Approx {
        lambda0: Complex64,
        xi: Vec<Complex64>,
        x10: Vec<Complex64>,
        x20: Vec<Complex64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub data: WitnessData,
    /// ‖P(λ₀)·(x₁₀; x₂₀; ξ)‖∞ for the evaluated pencil P; exactly 0 on the
    /// exact path.
    pub residual: f64,
}

impl Witness {
    pub fn is_exact(&self) -> bool {
        matches!(self.data, WitnessData::Exact { .. })
    }

    pub fn lambda0(&self) -> ComplexScalar {
        match &self.data {
            WitnessData::Exact { lambda0, .. } => ComplexScalar::Exact(lambda0.clone()),
            WitnessData::Approx { lambda0, .. } => ComplexScalar::Approx(*lambda0),
        }
    }

    pub fn lambda0_c64(&self) -> Complex64 {
        self.lambda0().to_c64()
    }

    pub fn xi_c64(&self) -> Vec<Complex64> {
        match &self.data {
            WitnessData::Exact { xi, .. } => xi.iter().map(|z| z.to_c64()).collect(),
            WitnessData::Approx { xi, .. } => xi.clone(),
        }
    }

    pub fn x10_c64(&self) -> Vec<Complex64> {
        match &self.data {
            WitnessData::Exact { x10, .. } => x10.iter().map(|z| z.to_c64()).collect(),
            WitnessData::Approx { x10, .. } => x10.clone(),
        }
    }

    pub fn x20_c64(&self) -> Vec<Complex64> {
        match &self.data {
            WitnessData::Exact { x20, .. } => x20.iter().map(|z| z.to_c64()).collect(),
            WitnessData::Approx { x20, .. } => x20.clone(),
        }
    }

    /// The witness input u(t) = e^{λ₀t}ξ. Approximate data embeds exactly:
    /// every finite double is a dyadic rational.
    pub fn input_signal(&self) -> PolyExpSignal {
        match &self.data {
            WitnessData::Exact { lambda0, xi, .. } => {
                PolyExpSignal::exponential(lambda0.clone(), xi.clone())
            }
            WitnessData::Approx { lambda0, xi, .. } => {
                let l = ComplexRational::from_c64_exact(*lambda0).expect("finite root");
                let x = xi
                    .iter()
                    .map(|z| ComplexRational::from_c64_exact(*z).expect("finite entry"))
                    .collect();
                PolyExpSignal::exponential(l, x)
            }
        }
    }

    /// Componentwise conjugate witness (valid at the conjugate root when
    /// the pencil is real).
    pub fn conjugate(&self) -> Witness {
        let data = match &self.data {
            WitnessData::Exact {
                lambda0,
                xi,
                x10,
                x20,
            } => WitnessData::Exact {
                lambda0: lambda0.conj(),
                xi: xi.iter().map(|z| z.conj()).collect(),
                x10: x10.iter().map(|z| z.conj()).collect(),
                x20: x20.iter().map(|z| z.conj()).collect(),
            },
            WitnessData::Approx {
                lambda0,
                xi,
                x10,
                x20,
            } => WitnessData::Approx {
                lambda0: lambda0.conj(),
                xi: xi.iter().map(|z| z.conj()).collect(),
                x10: x10.iter().map(|z| z.conj()).collect(),
                x20: x20.iter().map(|z| z.conj()).collect(),
            },
        };
        Witness {
            data,
            residual: self.residual,
        }
    }
}

/// Max |coefficient| over the pencil entries, the residual reference scale.
fn pencil_scale(cs: &CombinedSystem) -> f64 {
    cs.pencil()
        .entries()
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .map(|c| c.to_f64().abs())
        .fold(0.0f64, f64::max)
}

pub fn extract_witness(cs: &CombinedSystem, lambda0: &ComplexScalar) -> Result<Witness> {
    extract_witness_with(cs, lambda0, &Tolerances::default())
}

/// Splits a null vector of the pencil at λ₀ into (x₁₀, x₂₀, ξ). Exact λ₀
/// takes the exact-nullspace path; approximate λ₀ uses complete-pivot
/// elimination under `tol.rank_gate` with residual certification.
pub fn extract_witness_with(
    cs: &CombinedSystem,
    lambda0: &ComplexScalar,
    tol: &Tolerances,
) -> Result<Witness> {
    let pencil = cs.pencil();
    let (n1, n2) = (cs.n1(), cs.n2());
    let n = n1 + n2;
    match lambda0 {
        ComplexScalar::Exact(z) => {
            let m = eval_matrix(&pencil, z);
            let basis = m.nullspace();
            let Some(v) = basis.into_iter().next() else {
                return Err(Error::NoDefectAtLambda(z.to_string()));
            };
            // Normalize: the first largest-modulus component becomes
            // exactly 1.
            let mut top = v[0].clone();
            for e in &v[1..] {
                if e.modulus_sq() > top.modulus_sq() {
                    top = e.clone();
                }
            }
            let v: Vec<ComplexRational> =
                v.into_iter().map(|e| e / top.clone()).collect();
            let check = m.matvec(&v)?;
            if !check.iter().all(|e| e.is_zero()) {
                return Err(Error::InternalInconsistency(
                    "exact null vector fails exact verification".into(),
                ));
            }
            Ok(Witness {
                data: WitnessData::Exact {
                    lambda0: z.clone(),
                    x10: v[..n1].to_vec(),
                    x20: v[n1..n].to_vec(),
                    xi: v[n..].to_vec(),
                },
                residual: 0.0,
            })
        }
        ComplexScalar::Approx(z) => {
            let entries = eval_matrix_c64(&pencil, *z);
            let m = CMat::new(pencil.rows(), pencil.cols(), entries);
            let scale = 1.0 + pencil_scale(cs).max(z.norm());
            let Some(v) = null_vector(&m, tol.rank_gate * scale) else {
                return Err(Error::NoDefectAtLambda(format!("{z}")));
            };
            let residual = m
                .matvec(&v)
                .iter()
                .map(|e| e.norm())
                .fold(0.0f64, f64::max);
            if residual > tol.residual * scale {
                return Err(Error::WitnessSynthesis(format!(
                    "residual {residual:.3e} exceeds {:.3e} at lambda = {z}",
                    tol.residual * scale
                )));
            }
            Ok(Witness {
                data: WitnessData::Approx {
                    lambda0: *z,
                    x10: v[..n1].to_vec(),
                    x20: v[n1..n].to_vec(),
                    xi: v[n..].to_vec(),
                },
                residual,
            })
        }
    }
}

/// Replay record for a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub horizon: f64,
    pub samples: usize,
    pub max_deviation: f64,
    /// The bound the deviation was checked against.
    pub tolerance: f64,
    pub pass: bool,
}

pub fn certify_witness(
    pair: &SystemPair,
    w: &Witness,
    horizon: f64,
    samples: usize,
) -> Result<CertificationReport> {
    certify_witness_with(pair, w, horizon, samples, &Tolerances::default())
}

/// Simulates both subsystem outputs under the witness input on `samples`
/// uniform points of [0, horizon] and compares the max deviation against
/// `tol.simulation · (1 + output magnitude)`. The output magnitude is the
/// largest value entering any output evaluation (Σ |c_ij||x_j| + |g_ij||u_j|,
/// before cancellation): that is the scale the simulated outputs carry, so
/// the check stays meaningful on horizons where trajectories grow large.
pub fn certify_witness_with(
    pair: &SystemPair,
    w: &Witness,
    horizon: f64,
    samples: usize,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    if samples < 2 {
        return Err(Error::DimensionMismatch(
            "certification needs at least 2 samples".into(),
        ));
    }
    let times = uniform_grid(horizon, samples);
    let sig = w.input_signal();
    let (y1, scale1) = simulate_with_scale(pair.s1(), &w.x10_c64(), &sig, &times)?;
    let (y2, scale2) = simulate_with_scale(pair.s2(), &w.x20_c64(), &sig, &times)?;
    let mut max_dev = 0.0f64;
    for (a, b) in y1.iter().zip(&y2) {
        for (u, v) in a.iter().zip(b) {
            max_dev = max_dev.max((u - v).norm());
        }
    }
    let tolerance = tol.simulation * (1.0 + scale1.max(scale2));
    Ok(CertificationReport {
        horizon,
        samples,
        max_deviation: max_dev,
        tolerance,
        pass: max_dev <= tolerance,
    })
}

/// Standard witness pipeline for an indistinguishable combined system:
/// λ₀ = 0 in the normal-rank-deficient branch, otherwise exact defect roots
/// first, then the smallest-magnitude certified float root.
pub fn synthesize_witness(
    cs: &CombinedSystem,
    defect: &Defect,
    tol: &Tolerances,
) -> Result<Witness> {
    match defect {
        Defect::NormalRankDeficient => {
            extract_witness_with(cs, &ComplexScalar::zero(), tol)
        }
        Defect::NonconstantFactor(poly) => {
            let roots = find_defect_roots(poly)?;
            let mut last_err = None;
            for root in &roots.roots {
                match extract_witness_with(cs, &root.value, tol) {
                    Ok(w) => return Ok(w),
                    Err(e) => last_err = Some(e),
                }
            }
            Err(Error::WitnessSynthesis(format!(
                "no defect root produced a witness (last error: {})",
                last_err.map_or_else(|| "none tried".to_string(), |e| e.to_string())
            )))
        }
    }
}
