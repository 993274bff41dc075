use serde::Serialize;

use super::Coloring;

/// The six vertex types of the ice rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexKind {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    CPlus,
    CMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TurnKind {
    /// `k+`: turn face of color 2 (height one below the outside).
    Positive,
    /// `k-`: turn face of color 1.
    Negative,
}

/// One vertex of a state.
///
/// `heights` lists the surrounding face heights in the order `(a, b, c, d)`
/// of the vertex frame: on upper lines that is upper-left, upper-right,
/// lower-left, lower-right; on lower lines the frame is turned a quarter
/// counterclockwise, giving lower-left, upper-left, lower-right, upper-right.
/// The weight of the vertex is evaluated at height `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexSite {
    /// Double row, `1..=n` counted from the bottom.
    pub double_row: usize,
    /// Vertical line, `1..=n` counted from the left.
    pub column: usize,
    pub upper: bool,
    pub kind: VertexKind,
    pub heights: [i32; 4],
}

impl VertexSite {
    pub fn height(&self) -> i32 {
        self.heights[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TurnSite {
    pub double_row: usize,
    pub kind: TurnKind,
    /// Height of the face enclosed by the turn (`-1` or `+1`).
    pub inside_height: i32,
}

/// Per-state counts of each vertex and turn type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexCensus {
    pub a_plus: usize,
    pub a_minus: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    pub k_plus: usize,
    pub k_minus: usize,
}

impl VertexCensus {
    pub fn vertices(&self) -> usize {
        self.a_plus + self.a_minus + self.b_plus + self.b_minus + self.c_plus + self.c_minus
    }

    pub fn turns(&self) -> usize {
        self.k_plus + self.k_minus
    }

    /// `ν(b+) = ν(b-) + n(n+1)/2` and `ν(c+) + 2ν(k-) = ν(c-) + n`.
    pub fn satisfies_arrow_balance(&self, n: usize) -> bool {
        self.b_plus == self.b_minus + n * (n + 1) / 2 && self.c_plus + 2 * self.k_minus == self.c_minus + n
    }

    fn record(&mut self, kind: VertexKind) {
        match kind {
            VertexKind::APlus => self.a_plus += 1,
            VertexKind::AMinus => self.a_minus += 1,
            VertexKind::BPlus => self.b_plus += 1,
            VertexKind::BMinus => self.b_minus += 1,
            VertexKind::CPlus => self.c_plus += 1,
            VertexKind::CMinus => self.c_minus += 1,
        }
    }
}

fn kind_from_heights([a, b, c, d]: [i32; 4]) -> VertexKind {
    match (b - a, c - a, d - a) {
        (-1, -1, -2) => VertexKind::APlus,
        (1, 1, 2) => VertexKind::AMinus,
        (1, -1, 0) => VertexKind::BPlus,
        (-1, 1, 0) => VertexKind::BMinus,
        (-1, -1, 0) => VertexKind::CPlus,
        (1, 1, 0) => VertexKind::CMinus,
        other => unreachable!("heights of a valid coloring cannot give offsets {other:?}"),
    }
}

/// Every vertex and turn of the state with its type and local heights.
pub fn lattice_sites(col: &Coloring) -> (Vec<VertexSite>, Vec<TurnSite>) {
    let n = col.n().get();
    let cols = n + 1;
    let h = col.heights();
    let at = |r: usize, c: usize| h[r * cols + c];
    let mut vertices = Vec::with_capacity(2 * n * n);
    for t in 0..2 * n {
        let upper = t % 2 == 0;
        let double_row = n - t / 2;
        for c in 1..=n {
            let (ul, ur, ll, lr) = (at(t, c - 1), at(t, c), at(t + 1, c - 1), at(t + 1, c));
            let heights = if upper { [ul, ur, ll, lr] } else { [ll, ul, lr, ur] };
            vertices.push(VertexSite {
                double_row,
                column: c,
                upper,
                kind: kind_from_heights(heights),
                heights,
            });
        }
    }
    let turns = (0..n)
        .map(|i| {
            let inside_height = at(2 * i + 1, 0);
            TurnSite {
                double_row: n - i,
                kind: if inside_height < 0 {
                    TurnKind::Positive
                } else {
                    TurnKind::Negative
                },
                inside_height,
            }
        })
        .collect();
    (vertices, turns)
}

/// Classifies every vertex as `a±, b±, c±` and every turn as `k±`.
pub fn classify_vertices(col: &Coloring) -> VertexCensus {
    let (vertices, turns) = lattice_sites(col);
    let mut census = VertexCensus::default();
    for v in &vertices {
        census.record(v.kind);
    }
    for t in &turns {
        match t.kind {
            TurnKind::Positive => census.k_plus += 1,
            TurnKind::Negative => census.k_minus += 1,
        }
    }
    census
}
