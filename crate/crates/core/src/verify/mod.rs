//! Exact checks that tie the count tables to the determinant side. Every
//! comparison here is an equality of rationals; there are no tolerances.

mod corollaries;
mod qcounts;
mod theorem;

pub use corollaries::{verify_corollaries, verify_lemma_counts, verify_positivity, verify_symmetries};
pub use qcounts::{q_from_counts, verify_confluent, verify_q_cross};
pub use theorem::{theorem_polynomial, theorem_rhs, verify_theorem};

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Witnesses kept per report; the count of failures is always exact.
const MAX_WITNESSES: usize = 20;

/// Residue-class constants used by the expansion of `q` in colour counts and
/// by the corollaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchConstants {
    pub n: usize,
    pub a: usize,
    pub c: usize,
    pub d: usize,
}

impl BranchConstants {
    pub fn new(n: usize) -> Self {
        if n % 3 == 2 {
            Self { n, a: 1, c: 1, d: 0 }
        } else {
            Self { n, a: 3, c: 0, d: 1 }
        }
    }
}

/// Face weights `(t0, t1, t2)`, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTriple {
    pub t: [BigRational; 3],
}

impl WeightTriple {
    pub fn new(t0: BigRational, t1: BigRational, t2: BigRational) -> Result<Self> {
        if t0.is_zero() || t1.is_zero() || t2.is_zero() {
            return Err(Error::SingularParameter("face weights must be nonzero".into()));
        }
        Ok(Self { t: [t0, t1, t2] })
    }

    /// `(t0 t1 + t0 t2 + t1 t2)^3 / (t0 t1 t2)^2`.
    pub fn t_statistic(&self) -> BigRational {
        let [a, b, c] = &self.t;
        let e2 = a * b + a * c + b * c;
        let e3 = a * b * c;
        num_traits::pow(e2, 3) / (&e3 * &e3)
    }

    /// Seeded draw with numerators in `[-50, 50] \ {0}` and denominators in
    /// `[1, 50]`.
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        Self {
            t: [random_rational(rng), random_rational(rng), random_rational(rng)],
        }
    }
}

impl std::fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.t[0], self.t[1], self.t[2])
    }
}

/// Nonzero rational with bounded numerator and denominator.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-50..=50);
    }
    let den: i64 = rng.gen_range(1..=50);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub status: Status,
    /// Number of instances examined (states, keys, trials, ...).
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates instances and failure witnesses while a check runs.
pub(crate) struct Recorder {
    check: String,
    n: usize,
    start: Instant,
    checked: u64,
    failures: u64,
    witnesses: Vec<String>,
}

impl Recorder {
    pub(crate) fn new(check: &str, n: usize) -> Self {
        Self {
            check: check.into(),
            n,
            start: Instant::now(),
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub(crate) fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub(crate) fn finish(self) -> Report {
        Report {
            check: self.check,
            n: self.n,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Fixed-width text table of reports.
pub fn summary_table(reports: &[Report]) -> String {
    let mut out = format!(
        "{:<14} {:>3} {:>6} {:>10} {:>9} {:>10}\n",
        "check", "n", "status", "checked", "failures", "elapsed_ms"
    );
    for r in reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>6} {:>10} {:>9} {:>10}",
            r.check, r.n, status, r.checked, r.failures, r.elapsed_ms
        );
        for w in &r.witnesses {
            let _ = writeln!(out, "    witness: {w}");
        }
    }
    out
}
