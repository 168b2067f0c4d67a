//! JSON schemas: the pair input file and the machine-readable report.
//! Rationals travel as strings so exact values survive the round trip;
//! floating-point values appear as JSON numbers.

use distkit_core::{
    CertificationReport, ComplexRational, DecisionReport, LtiSystem, Matrix, PencilDecision,
    Poly, Rational, RatMatrix, RouteResult, SystemPair, Verdict, Witness, WitnessData,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub s1: SystemJson,
    pub s2: SystemJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

/// One subsystem as rectangular arrays. Entries may be `"p/q"` strings,
/// integers, or finite decimals; `[]` stands for a matrix with zero columns
/// (the automation case).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<serde_json::Value>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<serde_json::Value>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<serde_json::Value>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<serde_json::Value>>,
}

fn parse_entry(v: &serde_json::Value, ctx: &str) -> Result<Rational, String> {
    match v {
        serde_json::Value::String(s) => {
            Rational::parse(s).map_err(|e| format!("{ctx}: {e}"))
        }
        serde_json::Value::Number(n) => {
            Rational::parse(&n.to_string()).map_err(|e| format!("{ctx}: {e}"))
        }
        other => Err(format!("{ctx}: expected a rational string or number, got {other}")),
    }
}

/// Parses a matrix with an expected shape; `rows == 0` in the input means a
/// `fallback_rows × 0` matrix so that automation systems can write `[]`.
fn parse_matrix(
    name: &str,
    data: &[Vec<serde_json::Value>],
    fallback_rows: usize,
) -> Result<RatMatrix, String> {
    if data.is_empty() {
        return Ok(RatMatrix::zeros(fallback_rows, 0));
    }
    let cols = data[0].len();
    let mut rows = Vec::with_capacity(data.len());
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(format!(
                "{name}: row {i} has {} entries, expected {cols} (matrix must be rectangular)",
                row.len()
            ));
        }
        let mut out = Vec::with_capacity(cols);
        for (j, v) in row.iter().enumerate() {
            out.push(parse_entry(v, &format!("{name}[{i}][{j}]"))?);
        }
        rows.push(out);
    }
    Matrix::from_rows(rows).map_err(|e| format!("{name}: {e}"))
}

fn parse_system(label: &str, sys: &SystemJson) -> Result<LtiSystem, String> {
    let a = parse_matrix(&format!("{label}.A"), &sys.a, 0)?;
    let n = a.rows();
    let b = parse_matrix(&format!("{label}.B"), &sys.b, n)?;
    let c = parse_matrix(&format!("{label}.C"), &sys.c, 0)?;
    let k = c.rows();
    let g = parse_matrix(&format!("{label}.G"), &sys.g, k)?;
    LtiSystem::new(a, b, c, g).map_err(|e| format!("{label}: {e}"))
}

impl PairFile {
    pub fn to_pair(&self) -> Result<SystemPair, String> {
        let s1 = parse_system("s1", &self.s1)?;
        let s2 = parse_system("s2", &self.s2)?;
        SystemPair::new(s1, s2).map_err(|e| e.to_string())
    }

    pub fn from_pair(pair: &SystemPair, metadata: Option<Metadata>) -> Self {
        PairFile {
            metadata,
            s1: system_json(pair.s1()),
            s2: system_json(pair.s2()),
        }
    }
}

fn system_json(s: &LtiSystem) -> SystemJson {
    let dump = |m: &RatMatrix| -> Vec<Vec<serde_json::Value>> {
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|e| serde_json::Value::String(e.to_string()))
                    .collect()
            })
            .collect()
    };
    SystemJson {
        a: dump(s.a()),
        b: dump(s.b()),
        c: dump(s.c()),
        g: dump(s.g()),
    }
}

/// A complex component: exact rational string or double-precision number.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ScalarJson {
    Approx(f64),
    Exact(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexJson {
    pub re: ScalarJson,
    pub im: ScalarJson,
}

fn complex_exact(z: &ComplexRational) -> ComplexJson {
    ComplexJson {
        re: ScalarJson::Exact(z.re.to_string()),
        im: ScalarJson::Exact(z.im.to_string()),
    }
}

fn complex_approx(z: Complex64) -> ComplexJson {
    ComplexJson {
        re: ScalarJson::Approx(z.re),
        im: ScalarJson::Approx(z.im),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessJson {
    pub exact: bool,
    pub lambda0: ComplexJson,
    pub xi: Vec<ComplexJson>,
    pub x10: Vec<ComplexJson>,
    pub x20: Vec<ComplexJson>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertificationJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificationJson {
    pub horizon: f64,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn witness_json(w: &Witness, cert: Option<&CertificationReport>) -> WitnessJson {
    let (lambda0, xi, x10, x20) = match &w.data {
        WitnessData::Exact {
            lambda0,
            xi,
            x10,
            x20,
        } => (
            complex_exact(lambda0),
            xi.iter().map(complex_exact).collect(),
            x10.iter().map(complex_exact).collect(),
            x20.iter().map(complex_exact).collect(),
        ),
        WitnessData::Approx {
            lambda0,
            xi,
            x10,
            x20,
        } => (
            complex_approx(*lambda0),
            xi.iter().copied().map(complex_approx).collect(),
            x10.iter().copied().map(complex_approx).collect(),
            x20.iter().copied().map(complex_approx).collect(),
        ),
    };
    WitnessJson {
        exact: w.is_exact(),
        lambda0,
        xi,
        x10,
        x20,
        residual: w.residual,
        certification: cert.map(|c| CertificationJson {
            horizon: c.horizon,
            samples: c.samples,
            max_deviation: c.max_deviation,
            tolerance: c.tolerance,
            pass: c.pass,
        }),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RouteJson {
    pub normal_rank: usize,
    pub columns: usize,
    /// Ascending coefficients of the last invariant factor, exact strings.
    pub last_invariant_factor: Vec<String>,
    pub full_for_all_lambda: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RoutesJson {
    pub pencil: RouteJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_matrix: Option<RouteJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportFile {
    pub verdict: String,
    pub normal_rank: usize,
    pub columns: usize,
    /// Ascending coefficients of the pencil route's last invariant factor.
    pub defect_polynomial: Vec<String>,
    /// "none", "nonconstant_factor", or "normal_rank_deficient".
    pub defect_kind: String,
    pub routes: RoutesJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: f64,
}

fn poly_coeffs(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn route_json(r: &RouteResult) -> RouteJson {
    RouteJson {
        normal_rank: r.normal_rank,
        columns: r.columns,
        last_invariant_factor: poly_coeffs(&r.last_invariant_factor),
        full_for_all_lambda: r.full_for_all_lambda,
    }
}

fn defect_kind(defect: &Option<distkit_core::Defect>) -> String {
    match defect {
        None => "none".to_string(),
        Some(distkit_core::Defect::NonconstantFactor(_)) => "nonconstant_factor".to_string(),
        Some(distkit_core::Defect::NormalRankDeficient) => "normal_rank_deficient".to_string(),
    }
}

pub fn report_from_full(report: &DecisionReport, timing_ms: f64) -> ReportFile {
    ReportFile {
        verdict: report.verdict.to_string(),
        normal_rank: report.route_pencil.normal_rank,
        columns: report.route_pencil.columns,
        defect_polynomial: poly_coeffs(&report.route_pencil.last_invariant_factor),
        defect_kind: defect_kind(&report.defect),
        routes: RoutesJson {
            pencil: route_json(&report.route_pencil),
            lambda_matrix: Some(route_json(&report.route_lambda_matrix)),
        },
        agreement: Some(report.agreement),
        witness: None,
        notes: report.notes.clone(),
        timing_ms,
    }
}

pub fn report_from_pencil(decision: &PencilDecision, timing_ms: f64) -> ReportFile {
    ReportFile {
        verdict: decision.verdict.to_string(),
        normal_rank: decision.route.normal_rank,
        columns: decision.route.columns,
        defect_polynomial: poly_coeffs(&decision.route.last_invariant_factor),
        defect_kind: defect_kind(&decision.defect),
        routes: RoutesJson {
            pencil: route_json(&decision.route),
            lambda_matrix: None,
        },
        agreement: None,
        witness: None,
        notes: decision.notes.clone(),
        timing_ms,
    }
}

pub fn render_text(report: &ReportFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict: {}\n", report.verdict));
    out.push_str(&format!(
        "normal rank: {} of {} columns\n",
        report.normal_rank, report.columns
    ));
    out.push_str(&format!(
        "defect: {} (last invariant factor coefficients {:?})\n",
        report.defect_kind, report.defect_polynomial
    ));
    if let Some(l) = &report.routes.lambda_matrix {
        out.push_str(&format!(
            "lambda-matrix route: rank {} of {}, full for all lambda: {}\n",
            l.normal_rank, l.columns, l.full_for_all_lambda
        ));
    }
    if let Some(a) = report.agreement {
        out.push_str(&format!("route agreement: {a}\n"));
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    if let Some(w) = &report.witness {
        let fmt_c = |c: &ComplexJson| -> String {
            let part = |s: &ScalarJson| match s {
                ScalarJson::Exact(v) => v.clone(),
                ScalarJson::Approx(v) => format!("{v}"),
            };
            format!("{}+{}i", part(&c.re), part(&c.im))
        };
        out.push_str(&format!(
            "witness: lambda0 = {} ({})\n",
            fmt_c(&w.lambda0),
            if w.exact { "exact" } else { "certified float" }
        ));
        let join = |v: &[ComplexJson]| v.iter().map(fmt_c).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("  xi  = [{}]\n", join(&w.xi)));
        out.push_str(&format!("  x10 = [{}]\n", join(&w.x10)));
        out.push_str(&format!("  x20 = [{}]\n", join(&w.x20)));
        out.push_str(&format!("  pencil residual = {:.3e}\n", w.residual));
        if let Some(c) = &w.certification {
            out.push_str(&format!(
                "  certification: horizon {}, {} samples, max deviation {:.3e} (tolerance {:.3e}) => {}\n",
                c.horizon,
                c.samples,
                c.max_deviation,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
    }
    out.push_str(&format!("timing: {:.1} ms\n", report.timing_ms));
    out
}

pub fn verdict_exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Distinguishable => 0,
        Verdict::Indistinguishable => 3,
    }
}
