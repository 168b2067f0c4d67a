//! The distinguishability decision: two independent exact routes over the
//! same combined system, reconciled.
//!
//! Route 1 (authoritative) tests the degree-1 system pencil [C G; A−λI B];
//! route 2 tests the stacked λ-matrix. Either has full column rank at every
//! λ ∈ ℂ iff its invariant-factor chain has full length and a constant last
//! factor; the two conditions are equivalent, so any disagreement is an
//! implementation bug and is reported as a hard error.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, poly_rank, PolyMatrix};
use crate::model::{CombinedSystem, SystemPair};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinguishable,
    Indistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguishable => write!(f, "distinguishable"),
            Verdict::Indistinguishable => write!(f, "indistinguishable"),
        }
    }
}

/// Why full column rank fails, when it does. The two failure modes behave
/// differently downstream: a nonconstant factor drops rank only at its
/// roots, while normal-rank deficiency admits witnesses at every λ.
#[derive(Debug, Clone, PartialEq)]
pub enum Defect {
    /// Rank drops exactly at the roots of this (nonconstant, monic) factor.
    NonconstantFactor(Poly),
    /// Normal rank < columns: rank deficient for all λ.
    NormalRankDeficient,
}

/// Outcome of one rank route.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteResult {
    pub normal_rank: usize,
    pub columns: usize,
    /// Last invariant factor d_r (monic); zero polynomial when the rank is 0.
    pub last_invariant_factor: Poly,
    pub full_for_all_lambda: bool,
}

impl RouteResult {
    fn from_matrix(m: &PolyMatrix) -> Result<Self> {
        let cols = m.cols();
        let rank = poly_rank(m);
        let inv = invariant_factors(m);
        if inv.rank != rank {
            return Err(Error::InternalInconsistency(format!(
                "normal rank {rank} (elimination) vs {} (invariant factors)",
                inv.rank
            )));
        }
        let last = inv.last().cloned().unwrap_or_else(Poly::zero);
        let full = inv.full_column_rank_everywhere(cols);
        Ok(RouteResult {
            normal_rank: rank,
            columns: cols,
            last_invariant_factor: last,
            full_for_all_lambda: full,
        })
    }

    pub fn defect(&self) -> Option<Defect> {
        if self.full_for_all_lambda {
            None
        } else if self.normal_rank < self.columns {
            Some(Defect::NormalRankDeficient)
        } else {
            Some(Defect::NonconstantFactor(
                self.last_invariant_factor.clone(),
            ))
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.full_for_all_lambda {
            Verdict::Distinguishable
        } else {
            Verdict::Indistinguishable
        }
    }
}

/// Full decision record: verdict from the pencil route, with the λ-matrix
/// route kept for the agreement check.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub route_pencil: RouteResult,
    pub route_lambda_matrix: RouteResult,
    pub agreement: bool,
    pub defect: Option<Defect>,
    pub notes: Vec<String>,
}

/// Pencil route: [C G; A−λI B] has full column rank for all λ?
pub fn decide_pencil(cs: &CombinedSystem) -> Result<RouteResult> {
    RouteResult::from_matrix(&cs.pencil())
}

/// λ-matrix route: the stacked [C(A−λI)^j | C(A−λI)^{j−1}B] blocks.
pub fn decide_lambda_matrix(cs: &CombinedSystem) -> Result<RouteResult> {
    RouteResult::from_matrix(&cs.lambda_matrix())
}

pub(crate) fn structural_notes(cs: &CombinedSystem) -> Vec<String> {
    let mut notes = Vec::new();
    if cs.n1() == 0 {
        notes.push("subsystem 1 is stateless (n1 = 0)".to_string());
    }
    if cs.n2() == 0 {
        notes.push("subsystem 2 is stateless (n2 = 0)".to_string());
    }
    if cs.input_dim() == 0 {
        notes.push("automation pair (m = 0): no input channel".to_string());
    }
    notes
}

/// Runs both routes and reconciles them. Route disagreement can only be an
/// implementation bug and surfaces as an internal-inconsistency error.
pub fn decide(pair: &SystemPair) -> Result<DecisionReport> {
    let cs = pair.combine();
    let route_pencil = decide_pencil(&cs)?;
    let route_lambda = decide_lambda_matrix(&cs)?;
    let agreement = route_pencil.full_for_all_lambda == route_lambda.full_for_all_lambda;
    if !agreement {
        return Err(Error::InternalInconsistency(format!(
            "pencil route says full_for_all_lambda = {}, lambda-matrix route says {}",
            route_pencil.full_for_all_lambda, route_lambda.full_for_all_lambda
        )));
    }
    Ok(DecisionReport {
        verdict: route_pencil.verdict(),
        defect: route_pencil.defect(),
        route_pencil,
        route_lambda_matrix: route_lambda,
        agreement,
        notes: structural_notes(&cs),
    })
}

/// Pencil-route-only decision for the production fast path.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilDecision {
    pub verdict: Verdict,
    pub route: RouteResult,
    pub defect: Option<Defect>,
    pub notes: Vec<String>,
}

pub fn decide_pencil_only(pair: &SystemPair) -> Result<PencilDecision> {
    let cs = pair.combine();
    let route = decide_pencil(&cs)?;
    Ok(PencilDecision {
        verdict: route.verdict(),
        defect: route.defect(),
        route,
        notes: structural_notes(&cs),
    })
}
