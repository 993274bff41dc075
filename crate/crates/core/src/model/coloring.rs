use std::fmt;

use super::{color_step, LatticeSize};
use crate::counting::StateStats;
use crate::error::{Error, Result};

/// A proper three-coloring of the `(2n+1) x (n+1)` face grid that satisfies the
/// boundary rules. This is the canonical state representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    n: LatticeSize,
    cells: Vec<u8>,
}

/// The color forced on a boundary face, or `None` for a free face (interior
/// faces and the turn faces).
pub fn fixed_color(n: usize, row: usize, col: usize) -> Option<u8> {
    let last_row = 2 * n;
    if row == 0 {
        Some((col % 3) as u8)
    } else if row == last_row {
        Some(((3 - col % 3) % 3) as u8)
    } else if col == n {
        Some((n as i64 - row as i64).rem_euclid(3) as u8)
    } else if col == 0 && row.is_multiple_of(2) {
        Some(0)
    } else {
        None
    }
}

impl Coloring {
    /// Builds a coloring from row-major cells, checking every invariant.
    pub fn from_cells(n: LatticeSize, cells: Vec<u8>) -> Result<Self> {
        validate(n, &cells)?;
        Ok(Self { n, cells })
    }

    pub(crate) fn from_cells_unchecked(n: LatticeSize, cells: Vec<u8>) -> Self {
        debug_assert!(validate(n, &cells).is_ok());
        Self { n, cells }
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        if rows.len() < 3 || rows.len().is_multiple_of(2) {
            return Err(Error::InvalidColoring(format!(
                "expected an odd number (>= 3) of rows, got {}",
                rows.len()
            )));
        }
        let n = LatticeSize::new((rows.len() - 1) / 2)?;
        let mut cells = Vec::with_capacity(n.faces());
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n.cols() {
                return Err(Error::InvalidColoring(format!(
                    "row {r} has {} cells, expected {}",
                    row.len(),
                    n.cols()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(n, cells)
    }

    /// Parses the canonical text encoding: one line of digits per row, top to
    /// bottom.
    pub fn decode(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.bytes()
                    .map(|b| match b {
                        b'0'..=b'2' => Ok(b - b'0'),
                        _ => Err(Error::Parse(format!("unexpected character {:?}", b as char))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    /// Canonical text encoding: rows top to bottom joined by newlines.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    #[inline]
    pub fn n(&self) -> LatticeSize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n.cols() + col]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let w = self.n.cols();
        &self.cells[row * w..(row + 1) * w]
    }

    /// Colors of the turn faces, top to bottom.
    pub fn turn_colors(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n.get()).map(move |i| self.get(2 * i + 1, 0))
    }

    /// Number of positive turns (turn faces of color 2).
    pub fn positive_turns(&self) -> usize {
        self.turn_colors().filter(|&c| c == 2).count()
    }

    pub fn stats(&self) -> StateStats {
        StateStats::of_grid(self.n.get(), &self.cells)
    }

    /// Integer heights relative to the upper-left face (height 0). Adjacent
    /// faces differ by exactly one; reducing mod 3 gives the coloring back.
    pub fn heights(&self) -> Vec<i32> {
        let w = self.n.cols();
        let mut h = vec![0i32; self.cells.len()];
        for c in 1..w {
            h[c] = h[c - 1] + color_step(self.cells[c - 1], self.cells[c]);
        }
        for r in 1..self.n.rows() {
            for c in 0..w {
                let above = (r - 1) * w + c;
                h[r * w + c] = h[above] + color_step(self.cells[above], self.cells[r * w + c]);
            }
        }
        h
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n.rows() {
            if r > 0 {
                writeln!(f)?;
            }
            for &c in self.row(r) {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

fn validate(n: LatticeSize, cells: &[u8]) -> Result<()> {
    let (rows, cols) = (n.rows(), n.cols());
    if cells.len() != rows * cols {
        return Err(Error::InvalidColoring(format!(
            "expected {} cells, got {}",
            rows * cols,
            cells.len()
        )));
    }
    for r in 0..rows {
        for c in 0..cols {
            let v = cells[r * cols + c];
            if v > 2 {
                return Err(Error::InvalidColoring(format!("color {v} at ({r}, {c})")));
            }
            if let Some(f) = fixed_color(n.get(), r, c) {
                if v != f {
                    return Err(Error::InvalidColoring(format!(
                        "boundary face ({r}, {c}) has color {v}, expected {f}"
                    )));
                }
            } else if c == 0 && v == 0 {
                return Err(Error::InvalidColoring(format!("turn face ({r}, 0) has color 0")));
            }
            if c + 1 < cols && v == cells[r * cols + c + 1] {
                return Err(Error::InvalidColoring(format!(
                    "faces ({r}, {c}) and ({r}, {}) share color {v}",
                    c + 1
                )));
            }
            if r + 1 < rows && v == cells[(r + 1) * cols + c] {
                return Err(Error::InvalidColoring(format!(
                    "faces ({r}, {c}) and ({}, {c}) share color {v}",
                    r + 1
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_states_round_trip_through_text() {
        let text = "01\n10\n02";
        let col = Coloring::decode(text).unwrap();
        assert_eq!(col.encode(), text);
        assert_eq!(col.positive_turns(), 0);
        let other = Coloring::decode("01\n20\n02").unwrap();
        assert_eq!(other.positive_turns(), 1);
    }

    #[test]
    fn boundary_colors_follow_the_cycle() {
        // n = 3: top row 0120, right column 0,2,1,0,2,1,0, bottom row 0210.
        let n = 3;
        let top: Vec<u8> = (0..=n).map(|c| fixed_color(n, 0, c).unwrap()).collect();
        assert_eq!(top, [0, 1, 2, 0]);
        let right: Vec<u8> = (0..=2 * n).map(|r| fixed_color(n, r, n).unwrap()).collect();
        assert_eq!(right, [0, 2, 1, 0, 2, 1, 0]);
        let bottom: Vec<u8> = (0..=n).map(|c| fixed_color(n, 2 * n, c).unwrap()).collect();
        assert_eq!(bottom, [0, 2, 1, 0]);
        assert_eq!(fixed_color(n, 1, 0), None);
        assert_eq!(fixed_color(n, 2, 0), Some(0));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Coloring::decode("01\n00\n02").is_err()); // turn face 0
        assert!(Coloring::decode("01\n11\n02").is_err()); // adjacency
        assert!(Coloring::decode("02\n10\n01").is_err()); // boundary
        assert!(Coloring::decode("01\n10").is_err());
        assert!(Coloring::decode("01\n1x\n02").is_err());
    }

    #[test]
    fn heights_reduce_to_colors() {
        let col = Coloring::decode("01\n20\n02").unwrap();
        let h = col.heights();
        assert_eq!(h, vec![0, 1, -1, 0, 0, -1]);
        for (hv, &cv) in h.iter().zip(col.cells()) {
            assert_eq!(hv.rem_euclid(3) as u8, cv);
        }
    }
}
