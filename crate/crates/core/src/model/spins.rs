use super::{Coloring, LatticeSize};
use crate::error::{Error, Result};

/// Edge spins of a state.
///
/// Horizontal lines are numbered `l = 0..2n` from the bottom; odd `l` are the
/// upper (rightward-oriented) lines of their double rows, even `l` the lower
/// (leftward-oriented) ones. Line `l` carries edges `e = 0..=n`, where `e = 0`
/// is the half of the turning edge on that line and `e = n` is the right
/// boundary edge. Vertical line `c = 1..=n` carries segments `s = 0..=2n`
/// numbered from the bottom.
///
/// Spin `+1` points along the positive direction of the line: up for vertical
/// lines, left on lower lines and right on upper lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinState {
    n: LatticeSize,
    horizontal: Vec<Vec<i8>>,
    vertical: Vec<Vec<i8>>,
}

impl SpinState {
    /// Assembles a spin state from raw arrays without checking any invariant;
    /// see [`SpinState::validate`].
    pub fn from_parts(n: LatticeSize, horizontal: Vec<Vec<i8>>, vertical: Vec<Vec<i8>>) -> Result<Self> {
        let n_ = n.get();
        let shape_ok = horizontal.len() == 2 * n_
            && horizontal.iter().all(|l| l.len() == n_ + 1)
            && vertical.len() == 2 * n_ + 1
            && vertical.iter().all(|s| s.len() == n_);
        if !shape_ok {
            return Err(Error::InvalidSpins("array shape does not match n".into()));
        }
        if horizontal.iter().chain(&vertical).flatten().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpins("spins must be +1 or -1".into()));
        }
        Ok(Self { n, horizontal, vertical })
    }

    pub fn n(&self) -> LatticeSize {
        self.n
    }

    /// Spin on horizontal line `l` (from the bottom), edge `e`.
    pub fn horizontal(&self, l: usize, e: usize) -> i8 {
        self.horizontal[l][e]
    }

    /// Spin on vertical line `c` (1-based), segment `s` (from the bottom).
    pub fn vertical(&self, s: usize, c: usize) -> i8 {
        self.vertical[s][c - 1]
    }

    pub fn set_horizontal(&mut self, l: usize, e: usize, spin: i8) {
        self.horizontal[l][e] = spin;
    }

    pub fn set_vertical(&mut self, s: usize, c: usize, spin: i8) {
        self.vertical[s][c - 1] = spin;
    }

    /// Upper lines point right.
    #[inline]
    fn is_upper(l: usize) -> bool {
        l % 2 == 1
    }

    /// Vertices `(l, c)` where the ice rule `α + β = α' + β'` fails, with
    /// `α, β` the incoming and `α', β'` the outgoing spins along the positive
    /// directions.
    pub fn ice_rule_violations(&self) -> Vec<(usize, usize)> {
        let n = self.n.get();
        let mut bad = Vec::new();
        for l in 0..2 * n {
            for c in 1..=n {
                // Segment below line l is s = l, above is s = l + 1.
                let (below, above) = (self.vertical(l, c), self.vertical(l + 1, c));
                let (h_in, h_out) = if Self::is_upper(l) {
                    (self.horizontal[l][c - 1], self.horizontal[l][c])
                } else {
                    (self.horizontal[l][c], self.horizontal[l][c - 1])
                };
                if h_in + below != h_out + above {
                    bad.push((l, c));
                }
            }
        }
        bad
    }

    /// Checks the ice rule, the domain wall boundary and turn consistency.
    pub fn validate(&self) -> Result<()> {
        let n = self.n.get();
        if let Some(&(l, c)) = self.ice_rule_violations().first() {
            return Err(Error::InvalidSpins(format!("ice rule fails at line {l}, column {c}")));
        }
        for c in 1..=n {
            if self.vertical(0, c) != 1 || self.vertical(2 * n, c) != -1 {
                return Err(Error::InvalidSpins(format!("domain wall broken on vertical line {c}")));
            }
        }
        for l in 0..2 * n {
            let outward = if Self::is_upper(l) { 1 } else { -1 };
            if self.horizontal[l][n] != outward {
                return Err(Error::InvalidSpins(format!("right boundary arrow on line {l} points inward")));
            }
        }
        for i in 0..n {
            if self.horizontal[2 * i][0] != self.horizontal[2 * i + 1][0] {
                return Err(Error::InvalidSpins(format!("turn {i} has inconsistent spins")));
            }
        }
        Ok(())
    }
}

/// Derives every edge spin from the face colors: the spin `s` satisfies
/// `c_left - c_right = s (mod 3)` looking along the positive direction.
pub fn spins_from_coloring(col: &Coloring) -> SpinState {
    let n = col.n().get();
    let step = |left: u8, right: u8| -> i8 {
        if (3 + left - right) % 3 == 1 {
            1
        } else {
            -1
        }
    };
    let top_row_of_line = |l: usize| 2 * n - 1 - l;
    let horizontal = (0..2 * n)
        .map(|l| {
            let t = top_row_of_line(l);
            (0..=n)
                .map(|e| {
                    let (up, down) = (col.get(t, e), col.get(t + 1, e));
                    if SpinState::is_upper(l) {
                        step(up, down)
                    } else {
                        step(down, up)
                    }
                })
                .collect()
        })
        .collect();
    let vertical = (0..=2 * n)
        .map(|s| {
            let r = 2 * n - s;
            (1..=n).map(|c| step(col.get(r, c - 1), col.get(r, c))).collect()
        })
        .collect();
    SpinState {
        n: col.n(),
        horizontal,
        vertical,
    }
}

/// Propagates heights from the upper-left face (height 0) by the crossing
/// rule `z -> z - s` and reduces them mod 3.
pub fn coloring_from_spins(st: &SpinState) -> Result<Coloring> {
    let n = st.n.get();
    let (rows, cols) = (st.n.rows(), st.n.cols());
    // Height step going right across vertical segment (r, c), and going down
    // across the horizontal edge below face (t, e).
    let right_step = |r: usize, c: usize| -(st.vertical(2 * n - r, c) as i32);
    let down_step = |t: usize, e: usize| {
        let l = 2 * n - 1 - t;
        let s = st.horizontal[l][e] as i32;
        if SpinState::is_upper(l) {
            -s
        } else {
            s
        }
    };
    let mut h = vec![0i32; rows * cols];
    for c in 1..cols {
        h[c] = h[c - 1] + right_step(0, c);
    }
    for r in 1..rows {
        for c in 0..cols {
            h[r * cols + c] = h[(r - 1) * cols + c] + down_step(r - 1, c);
        }
    }
    for r in 0..rows {
        for c in 1..cols {
            if h[r * cols + c] != h[r * cols + c - 1] + right_step(r, c) {
                return Err(Error::InconsistentHeights { row: r, col: c });
            }
        }
    }
    let cells = h.iter().map(|v| v.rem_euclid(3) as u8).collect();
    Coloring::from_cells(st.n, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Colorings;

    #[test]
    fn n1_negative_turn() {
        let col = Coloring::decode("01\n10\n02").unwrap();
        let st = spins_from_coloring(&col);
        // Turn face color 1 sits one step above the outside height 0, so the
        // turning edge carries spin -1.
        assert_eq!(st.horizontal(0, 0), -1);
        assert_eq!(st.horizontal(1, 0), -1);
        st.validate().unwrap();
        assert_eq!(coloring_from_spins(&st).unwrap(), col);
    }

    #[test]
    fn bijection_and_ice_rule_exhaustive() {
        for n in 1..=4 {
            for col in Colorings::new(LatticeSize::new(n).unwrap()) {
                let st = spins_from_coloring(&col);
                assert!(st.ice_rule_violations().is_empty());
                st.validate().unwrap();
                assert_eq!(coloring_from_spins(&st).unwrap(), col);
            }
        }
    }

    #[test]
    fn corrupted_spin_is_detected() {
        let col = Colorings::new(LatticeSize::new(2).unwrap()).next().unwrap();
        let mut st = spins_from_coloring(&col);
        let flipped = -st.vertical(2, 1);
        st.set_vertical(2, 1, flipped);
        assert!(!st.ice_rule_violations().is_empty());
        assert!(matches!(
            coloring_from_spins(&st),
            Err(Error::InconsistentHeights { .. })
        ));
        assert!(st.validate().is_err());
    }

    #[test]
    fn from_parts_checks_shape() {
        let n = LatticeSize::new(1).unwrap();
        assert!(SpinState::from_parts(n, vec![vec![1, 1]; 2], vec![vec![1]; 3]).is_ok());
        assert!(SpinState::from_parts(n, vec![vec![1, 1]; 3], vec![vec![1]; 3]).is_err());
        assert!(SpinState::from_parts(n, vec![vec![1, 0]; 2], vec![vec![1]; 3]).is_err());
    }
}
