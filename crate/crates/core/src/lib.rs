//! Exact distinguishability analysis for pairs of linear time-invariant
//! control systems.
//!
//! Two systems are distinguishable when no nonzero choice of initial states
//! and input produces identical outputs. The decision here is fully exact:
//! it reduces to whether a λ-parameterized matrix built from the combined
//! system keeps full column rank at every complex λ, which the
//! invariant-factor chain of that matrix answers over ℚ\[λ\] with no
//! tolerances. When the answer is negative, the witness layer synthesizes a
//! concrete (λ₀, ξ, x₁₀, x₂₀) with input u(t) = e^{λ₀t}ξ and certifies it by
//! closed-form simulation.
//!
//! Modules:
//! - [`rational`], [`complex`], [`poly`]: the exact scalar and polynomial
//!   substrate.
//! - [`linalg`]: ranks, null spaces, Smith invariant factors, minor gcds.
//! - [`model`]: subsystem quadruples, pair combination, and the decision
//!   matrices.
//! - [`decision`]: the dual-route rank test.
//! - [`witness`]: defect roots, witness extraction, certification.
//! - [`signals`]: polynomial-exponential signals, the differential-operator
//!   calculus, and closed-form simulation.
//! - [`testgen`]: seeded generators and brute-force oracles.

// Indexed loops read better than iterator chains in the dense linear
// algebra here.
#![allow(clippy::needless_range_loop)]

pub mod complex;
pub mod decision;
pub mod error;
pub mod linalg;
pub mod model;
pub mod numeric;
pub mod poly;
pub mod rational;
mod roots;
pub mod signals;
pub mod testgen;
pub mod witness;

pub use complex::ComplexRational;
pub use decision::{
    decide, decide_lambda_matrix, decide_pencil, decide_pencil_only, DecisionReport, Defect,
    PencilDecision, RouteResult, Verdict,
};
pub use error::{Error, Result};
pub use linalg::{
    eval_matrix, invariant_factors, minor_gcd, poly_det, poly_rank, rat_nullspace, rat_rank,
    CrMatrix, InvariantFactors, Matrix, PolyMatrix, RatMatrix,
};
pub use model::{combine, CombinedSystem, LtiSystem, SystemPair};
pub use poly::{CPoly, Poly, Polynomial};
pub use rational::Rational;
pub use signals::{
    apply_operator, output_difference, reduce_to_exponential, reduced_initial_state,
    simulate_output, uniform_grid, DiffOperator, PolyExpSignal, SignalTerm,
};
pub use witness::{
    certify_witness, certify_witness_with, extract_witness, extract_witness_with,
    find_defect_roots, synthesize_witness, CertificationReport, ComplexScalar, DefectRoot,
    DefectRoots, Tolerances, Witness, WitnessData,
};
