use super::{fixed_color, Coloring, LatticeSize};

const UNSET: u8 = u8::MAX;

/// Depth-first enumeration over the free faces (interior faces and turn
/// faces) in row-major order, colors tried in ascending order.
///
/// [`GridEnumerator::next_grid`] lends the current grid without allocating;
/// [`Colorings`] wraps it as an owning iterator.
pub struct GridEnumerator {
    n: LatticeSize,
    cells: Vec<u8>,
    free: Vec<usize>,
    depth: usize,
    started: bool,
    done: bool,
}

impl GridEnumerator {
    pub fn new(n: LatticeSize) -> Self {
        let (rows, cols) = (n.rows(), n.cols());
        let mut cells = vec![UNSET; rows * cols];
        let mut free = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                match fixed_color(n.get(), r, c) {
                    Some(v) => cells[r * cols + c] = v,
                    None => free.push(r * cols + c),
                }
            }
        }
        Self {
            n,
            cells,
            free,
            depth: 0,
            started: false,
            done: false,
        }
    }

    pub fn n(&self) -> LatticeSize {
        self.n
    }

    #[inline]
    fn fits(&self, idx: usize, color: u8) -> bool {
        let cols = self.n.cols();
        let (r, c) = (idx / cols, idx % cols);
        let clash = |j: usize| self.cells[j] == color;
        !((r > 0 && clash(idx - cols))
            || (r + 1 < self.n.rows() && clash(idx + cols))
            || (c > 0 && clash(idx - 1))
            || (c + 1 < cols && clash(idx + 1)))
    }

    /// Advances to the next valid grid and lends it, row-major.
    pub fn next_grid(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        let last = self.free.len() - 1;
        if self.started {
            self.depth = last;
        }
        self.started = true;
        loop {
            let idx = self.free[self.depth];
            let start = match self.cells[idx] {
                UNSET => 0,
                v => v + 1,
            };
            self.cells[idx] = UNSET;
            match (start..3).find(|&color| self.fits(idx, color)) {
                Some(color) => {
                    self.cells[idx] = color;
                    if self.depth == last {
                        return Some(&self.cells);
                    }
                    self.depth += 1;
                }
                None => {
                    if self.depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

/// Owning iterator over every valid [`Coloring`] of the lattice, each exactly
/// once, in the deterministic order of [`GridEnumerator`].
pub struct Colorings(GridEnumerator);

impl Colorings {
    pub fn new(n: LatticeSize) -> Self {
        Self(GridEnumerator::new(n))
    }
}

impl Iterator for Colorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let n = self.0.n();
        self.0
            .next_grid()
            .map(|g| Coloring::from_cells_unchecked(n, g.to_vec()))
    }
}

/// Calls `f` with every valid grid (row-major cells).
pub fn for_each_grid(n: LatticeSize, mut f: impl FnMut(&[u8])) {
    let mut e = GridEnumerator::new(n);
    while let Some(g) = e.next_grid() {
        f(g);
    }
}

pub fn count_states(n: LatticeSize) -> u64 {
    let mut total = 0u64;
    for_each_grid(n, |_| total += 1);
    total
}
