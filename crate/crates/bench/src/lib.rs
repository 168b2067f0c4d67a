//! Shared fixtures for the criterion benchmarks.

use distkit_core::testgen::{gen_indistinguishable_pair, gen_random_pairs, GenConfig, PlantedPair};
use distkit_core::{LtiSystem, Matrix, Rational, RatMatrix, SystemPair};

/// Desk-scale random pairs from a fixed seed.
pub fn sample_pairs(count: usize) -> Vec<SystemPair> {
    gen_random_pairs(&GenConfig::desk_scale(0xBE11C4, count))
}

/// A planted indistinguishable pair with a known witness.
pub fn planted_pair() -> PlantedPair {
    gen_indistinguishable_pair(17)
}

/// A single moderately sized pair (n₁ = n₂ = 4, m = k = 2) for the
/// invariant-factor benchmarks.
pub fn midsize_pair() -> SystemPair {
    let entries = |seed: i64, rows: usize, cols: usize| -> RatMatrix {
        let data: Vec<Rational> = (0..rows * cols)
            .map(|i| Rational::from(((seed + i as i64 * 7) % 5) - 2))
            .collect();
        Matrix::new(rows, cols, data).unwrap()
    };
    let s1 = LtiSystem::new(
        entries(1, 4, 4),
        entries(2, 4, 2),
        entries(3, 2, 4),
        entries(4, 2, 2),
    )
    .unwrap();
    let s2 = LtiSystem::new(
        entries(5, 4, 4),
        entries(6, 4, 2),
        entries(7, 2, 4),
        entries(8, 2, 2),
    )
    .unwrap();
    SystemPair::new(s1, s2).unwrap()
}
