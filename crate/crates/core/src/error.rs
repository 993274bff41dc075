use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice size must be at least 1, got {0}")]
    InvalidSize(usize),

    #[error("{what} refused for n = {n}: cap is {cap}; {hint}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("transfer table for n = {n} exceeds the memory budget of {budget} stored counts")]
    MemoryBudget { n: usize, budget: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid spin state: {0}")]
    InvalidSpins(String),

    #[error("inconsistent height propagation at face ({row}, {col})")]
    InconsistentHeights { row: usize, col: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("series has zero constant term")]
    ZeroConstantTerm,

    #[error("degree {degree} exceeds the requested reversal degree {d}")]
    ReverseDegree { degree: usize, d: usize },

    #[error("G(c, c) vanishes at c = {c}, psi = {psi}")]
    SingularPoint { c: String, psi: String },

    #[error("coincident arguments at positions {0} and {1}")]
    CoincidentArguments(usize, usize),

    #[error("G(x_{j}, x_{i}) vanishes")]
    VanishingKernel { j: usize, i: usize },

    #[error("z = {z} is singular; excluded are 0, -1 and the zeros of G(1/z, 1/z) at psi = (1 - z)/(2z)")]
    SingularZ { z: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("count table corrupted: {0}")]
    TableCorruption(String),

    #[error("theta function evaluated at x = 0")]
    ThetaAtZero,

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
