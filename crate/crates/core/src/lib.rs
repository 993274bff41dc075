//! Exact machinery for the three-color model on a `2n x n` lattice with domain
//! wall boundary conditions on three sides and a reflecting (U-turn) end on the
//! left.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: colorings, spin states, their bijection, exhaustive enumeration
//!   and vertex classification.
//! - [`counting`]: exact tables `N^(m)(k0, k1, k2)` by brute force and by a
//!   row transfer matrix.
//! - [`algebra`]: exact rational polynomials, bivariate truncated series and
//!   determinants.
//! - [`oracle`]: the symmetric polynomial `T` at equal arguments via a
//!   confluent determinant, and the polynomials `q_{n-1}(z)` built from it.
//! - [`verify`]: exact checks tying the count tables to the determinant side.
//! - [`elliptic`]: floating-point checks of the theta-function layer.

pub mod algebra;
pub mod counting;
pub mod elliptic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod verify;

pub use algebra::{BiSeries, Poly};
pub use counting::{CountTable, StateStats};
pub use error::{Error, Result};
pub use model::{Coloring, LatticeSize, SpinState, VertexCensus};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use oracle::QPolynomial;
