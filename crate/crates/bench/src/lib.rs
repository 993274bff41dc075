//! Shared fixtures for the criterion benchmarks under `benches/`.

use tricolor_core::algebra::rat;
use tricolor_core::{BigRational, LatticeSize};

pub fn size(n: usize) -> LatticeSize {
    LatticeSize::new(n).expect("benchmark sizes are positive")
}

/// An admissible `(c, psi)` point for the confluent determinant.
pub fn confluent_point() -> (BigRational, BigRational) {
    (rat(3, 5), rat(1, 4))
}
