//! Exact linear algebra over ℚ and ℚ\[λ\]: ranks, null spaces, invariant
//! factors, and minor gcds.

mod exact;
mod mat;
mod minors;
mod smith;

pub use exact::{eval_matrix, eval_matrix_c64, poly_rank, poly_rank_with_pivots, rat_nullspace, rat_rank};
pub use mat::{CrMatrix, Matrix, PolyMatrix, RatMatrix};
pub use minors::{minor_gcd, poly_det};
pub use smith::{invariant_factors, InvariantFactors};
