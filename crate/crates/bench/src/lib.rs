//! Shared inputs for the criterion benchmarks.

use qbases_core::{DeformParam, HalfInt};

/// Spins benchmarked for single-module builders.
pub fn spins() -> Vec<HalfInt> {
    [1, 4, 8, 12].into_iter().map(HalfInt::from_twice).collect()
}

/// Leg pairs for the tensor-product benchmarks.
pub fn leg_pairs() -> Vec<(HalfInt, HalfInt)> {
    [(1, 1), (2, 2), (3, 4), (4, 4)]
        .into_iter()
        .map(|(a, b)| (HalfInt::from_twice(a), HalfInt::from_twice(b)))
        .collect()
}

pub fn z() -> DeformParam {
    DeformParam::new(0.3, 0.4).expect("finite")
}

pub fn zprime() -> DeformParam {
    DeformParam::real(0.9)
}
