//! The lattice, its two state representations and vertex classification.
//!
//! Faces are indexed `(row, col)` with row 0 at the top and column 0 at the
//! left wall. There are `2n + 1` face rows and `n + 1` face columns. Turn
//! faces (the faces enclosed by the U-turns) sit at odd rows of column 0.

mod census;
mod coloring;
mod enumerate;
mod spins;

pub use census::{classify_vertices, lattice_sites, TurnKind, TurnSite, VertexCensus, VertexKind, VertexSite};
pub use coloring::{fixed_color, Coloring};
pub use enumerate::{count_states, for_each_grid, Colorings, GridEnumerator};
pub use spins::{coloring_from_spins, spins_from_coloring, SpinState};

use crate::error::{Error, Result};

/// Number of double rows (equivalently, vertical lines) of the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSize(usize);

impl LatticeSize {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(n));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Face rows, `2n + 1`.
    #[inline]
    pub fn rows(self) -> usize {
        2 * self.0 + 1
    }

    /// Face columns, `n + 1`.
    #[inline]
    pub fn cols(self) -> usize {
        self.0 + 1
    }

    pub fn faces(self) -> usize {
        self.rows() * self.cols()
    }

    pub fn vertices(self) -> usize {
        2 * self.0 * self.0
    }

    pub fn turns(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for LatticeSize {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl std::fmt::Display for LatticeSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Integer step between two adjacent colors: `+1` if `to = from + 1 (mod 3)`,
/// `-1` if `to = from - 1 (mod 3)`. Adjacent faces never share a color.
#[inline]
pub(crate) fn color_step(from: u8, to: u8) -> i32 {
    match (3 + to - from) % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_sizes() {
        let n = LatticeSize::new(3).unwrap();
        assert_eq!(n.faces(), 7 * 4);
        assert_eq!(n.vertices(), 18);
        assert_eq!(n.turns(), 3);
        assert_eq!(LatticeSize::new(0), Err(Error::InvalidSize(0)));
    }

    #[test]
    fn steps() {
        assert_eq!(color_step(0, 1), 1);
        assert_eq!(color_step(2, 0), 1);
        assert_eq!(color_step(0, 2), -1);
        assert_eq!(color_step(1, 0), -1);
        assert_eq!(color_step(1, 1), 0);
    }
}
