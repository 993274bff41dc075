//! Command-line surface over `tricolor-core`.
//!
//! Everything written to the output sink is a pure function of the
//! configuration, so identical flags give byte-identical files. Timings,
//! provenance notes and summaries go to the log sink (standard error).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tricolor_core::counting::{best_table, brute_force_table, transfer_table_with_stats, TableConfig, TableSource};
use tricolor_core::elliptic::{numeric_suite, NumericReport};
use tricolor_core::model::for_each_grid;
use tricolor_core::oracle::q_poly;
use tricolor_core::verify::{
    q_from_counts, summary_table, verify_confluent, verify_corollaries, verify_lemma_counts, verify_positivity,
    verify_q_cross, verify_symmetries, verify_theorem, Report,
};
use tricolor_core::{BigInt, Coloring, CountTable, LatticeSize, StateStats};

pub const THREADS_VAR: &str = "TRICOLOR_THREADS";

/// Largest lattice the confluent cross-check runs at.
const CONFLUENT_MAX_N: usize = 3;
const THEOREM_TRIALS: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "tricolor", version, about = "Exact counts and identity checks for three-colorings of the square lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stream every coloring of the (2n+1) x (n+1) lattice.
    Enumerate(SizeArgs),
    /// Write the count table by (m, k0, k1, k2).
    Table(SizeArgs),
    /// Write the coefficients of q_{n-1} from both pipelines.
    Qpoly(CommonArgs),
    /// Run the verification suites up to --n-max.
    Verify(VerifyArgs),
    /// Time table construction.
    Bench(CommonArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SizeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Restrict to states with this many positive turns.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 4)]
    pub n_max: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<Suite>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Lemma,
    Corollaries,
    Theorem,
    Qcross,
    Elliptic,
    All,
}

impl Suite {
    const EACH: [Suite; 5] = [Suite::Lemma, Suite::Corollaries, Suite::Theorem, Suite::Qcross, Suite::Elliptic];

    fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Corollaries => "corollaries",
            Suite::Theorem => "theorem",
            Suite::Qcross => "qcross",
            Suite::Elliptic => "elliptic",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Enumerate,
    Table,
    Qpoly,
    Verify,
    Bench,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: usize,
    pub n_max: usize,
    pub m: Option<usize>,
    pub format: Format,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub suite: Vec<Suite>,
}

impl RunConfig {
    pub fn new(command: CommandKind, n: usize) -> Self {
        Self {
            command,
            n,
            n_max: n,
            m: None,
            format: Format::Json,
            seed: 42,
            out: None,
            suite: vec![Suite::All],
        }
    }

    /// The selected suites in canonical order with `all` expanded.
    pub fn suites(&self) -> Vec<Suite> {
        if self.suite.contains(&Suite::All) {
            return Suite::EACH.to_vec();
        }
        Suite::EACH.iter().copied().filter(|s| self.suite.contains(s)).collect()
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let sized = |command, a: CommonArgs, m| RunConfig {
            m,
            format: a.format,
            out: a.out,
            ..RunConfig::new(command, a.n as usize)
        };
        match cli.command {
            Command::Enumerate(a) => sized(CommandKind::Enumerate, a.common, a.m),
            Command::Table(a) => sized(CommandKind::Table, a.common, a.m),
            Command::Qpoly(a) => sized(CommandKind::Qpoly, a, None),
            Command::Bench(a) => sized(CommandKind::Bench, a, None),
            Command::Verify(a) => RunConfig {
                n_max: a.n_max as usize,
                format: a.format,
                seed: a.seed,
                out: a.out,
                suite: a.suite,
                ..RunConfig::new(CommandKind::Verify, a.n_max as usize)
            },
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tricolor_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Runs one command. `Ok(true)` when every executed check passed,
/// `Ok(false)` when a check failed, `Err` for refusals and usage errors.
pub fn run(config: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<bool, CliError> {
    let size = LatticeSize::new(config.n)?;
    let table_config = TableConfig::default();
    match config.command {
        CommandKind::Enumerate => enumerate(size, config, &table_config, out, log),
        CommandKind::Table => table(size, config, &table_config, out, log),
        CommandKind::Qpoly => qpoly(size, config, &table_config, out, log),
        CommandKind::Verify => verify(config, &table_config, out, log),
        CommandKind::Bench => bench(size, config, &table_config, out),
    }
}

/// Builds the global rayon pool from `TRICOLOR_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_VAR} must be a thread count, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn enumerate(
    size: LatticeSize,
    config: &RunConfig,
    table_config: &TableConfig,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<bool, CliError> {
    let n = size.get();
    if n > table_config.brute_force_cap {
        return Err(tricolor_core::Error::CapExceeded {
            what: "enumeration",
            n,
            cap: table_config.brute_force_cap,
            hint: "use `table` for counts at larger n",
        }
        .into());
    }
    if config.format == Format::Csv {
        writeln!(out, "encoding,m,k0,k1,k2")?;
    }
    let mut first = true;
    let mut emitted = 0u64;
    let mut io = Ok(());
    for_each_grid(size, |cells| {
        if io.is_err() {
            return;
        }
        let col = Coloring::from_cells(size, cells.to_vec()).expect("enumerated grids are valid");
        let stats = col.stats();
        if config.m.is_some_and(|m| m != stats.m) {
            return;
        }
        io = write_coloring(out, config.format, &col, &stats, first);
        first = false;
        emitted += 1;
    });
    io?;
    writeln!(log, "enumerated {emitted} states for n = {n}")?;
    Ok(true)
}

fn write_coloring(
    out: &mut dyn Write,
    format: Format,
    col: &Coloring,
    s: &StateStats,
    first: bool,
) -> std::io::Result<()> {
    let flat = col.encode().replace('\n', "/");
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"encoding": flat, "m": s.m, "k0": s.k0, "k1": s.k1, "k2": s.k2})
        ),
        Format::Csv => writeln!(out, "{flat},{},{},{},{}", s.m, s.k0, s.k1, s.k2),
        Format::Text => {
            if !first {
                writeln!(out)?;
            }
            writeln!(out, "# m={} k0={} k1={} k2={}", s.m, s.k0, s.k1, s.k2)?;
            writeln!(out, "{}", col.encode())
        }
    }
}

fn source_name(source: TableSource) -> &'static str {
    match source {
        TableSource::BruteForce => "brute-force",
        TableSource::TransferMatrix => "transfer-matrix",
    }
}

fn table(
    size: LatticeSize,
    config: &RunConfig,
    table_config: &TableConfig,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<bool, CliError> {
    let (full, source) = best_table(size, table_config)?;
    let table = match config.m {
        Some(m) => {
            let mut t = CountTable::new(size);
            for (k, v) in full.iter().filter(|(k, _)| k.m == m) {
                t.add(*k, v.clone());
            }
            t
        }
        None => full,
    };
    let source = source_name(source);
    writeln!(log, "table for n = {}: {} keys, source {source}", size.get(), table.len())?;
    match config.format {
        Format::Csv => write!(out, "{}", table.to_csv())?,
        Format::Json => {
            let doc = json!({"source": source, "table": table.to_json_value()});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Text => {
            writeln!(out, "# n = {}, source = {source}, states = {}", size.get(), table.total())?;
            writeln!(out, "{:>3} {:>4} {:>4} {:>4}  count", "m", "k0", "k1", "k2")?;
            for (k, v) in table.iter() {
                writeln!(out, "{:>3} {:>4} {:>4} {:>4}  {v}", k.m, k.k0, k.k1, k.k2)?;
            }
        }
    }
    Ok(true)
}

fn qpoly(
    size: LatticeSize,
    config: &RunConfig,
    table_config: &TableConfig,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<bool, CliError> {
    let n = size.get();
    let (table, source) = best_table(size, table_config)?;
    writeln!(log, "counts for n = {n} from {}", source_name(source))?;
    let from_counts = q_from_counts(&table)?;
    let from_det = q_poly(n)?;
    let equal = from_counts == from_det;
    let list = |coeffs: Vec<BigInt>| {
        let items: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", items.join(", "))
    };
    let (a, b) = (list(from_counts.coefficients()), list(from_det.coefficients()));
    let verdict = format!("combinatorial == determinant: {equal}");
    match config.format {
        Format::Json => {
            // Hand-written so coefficients stay exact integer literals.
            writeln!(out, "{{")?;
            writeln!(out, "  \"n\": {n},")?;
            writeln!(out, "  \"degree\": {},", from_det.degree())?;
            writeln!(out, "  \"combinatorial\": {a},")?;
            writeln!(out, "  \"determinant\": {b},")?;
            writeln!(out, "  \"equal\": {equal}")?;
            writeln!(out, "}}")?;
            writeln!(log, "{verdict}")?;
        }
        Format::Csv => {
            writeln!(out, "power,combinatorial,determinant")?;
            let (ca, cb) = (from_counts.coefficients(), from_det.coefficients());
            for i in 0..ca.len().max(cb.len()) {
                let get = |c: &[BigInt]| c.get(i).map(ToString::to_string).unwrap_or_default();
                writeln!(out, "{i},{},{}", get(&ca), get(&cb))?;
            }
            writeln!(log, "{verdict}")?;
        }
        Format::Text => {
            writeln!(out, "q_{} = {}", n - 1, from_det.poly)?;
            writeln!(out, "combinatorial: {a}")?;
            writeln!(out, "determinant:   {b}")?;
            writeln!(out, "{verdict}")?;
        }
    }
    Ok(equal)
}

fn verify(
    config: &RunConfig,
    table_config: &TableConfig,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<bool, CliError> {
    let n_max = config.n_max;
    LatticeSize::new(n_max)?;
    let suites = config.suites();
    let needs_tables = suites
        .iter()
        .any(|s| matches!(s, Suite::Corollaries | Suite::Theorem | Suite::Qcross));
    if needs_tables && n_max > table_config.transfer_cap {
        return Err(tricolor_core::Error::CapExceeded {
            what: "count tables for verification",
            n: n_max,
            cap: table_config.transfer_cap,
            hint: "lower --n-max",
        }
        .into());
    }

    let mut exact: Vec<Report> = Vec::new();
    let mut numeric: Vec<NumericReport> = Vec::new();
    for n in 1..=n_max {
        let size = LatticeSize::new(n)?;
        if suites.contains(&Suite::Lemma) {
            if n <= table_config.brute_force_cap {
                exact.push(verify_lemma_counts(size, table_config)?);
            } else {
                writeln!(log, "lemma: skipping n = {n} beyond the enumeration cap")?;
            }
        }
        if !needs_tables {
            continue;
        }
        let (table, _) = best_table(size, table_config)?;
        if suites.contains(&Suite::Corollaries) {
            exact.push(verify_corollaries(&table));
        }
        let q = q_poly(n)?;
        if suites.contains(&Suite::Theorem) {
            exact.push(verify_theorem(&table, &q, THEOREM_TRIALS, config.seed.wrapping_add(n as u64))?);
        }
        if suites.contains(&Suite::Qcross) {
            exact.push(verify_q_cross(&table)?);
            exact.push(verify_positivity(&q));
            exact.push(verify_symmetries(&q, config.seed.wrapping_add(n as u64)));
            if (2..=CONFLUENT_MAX_N).contains(&n) {
                exact.push(verify_confluent(n, 5, config.seed.wrapping_add(n as u64))?);
            }
        }
    }
    if suites.contains(&Suite::Elliptic) {
        numeric = numeric_suite(n_max, config.seed)?;
    }

    let passed = exact.iter().all(Report::passed) && numeric.iter().all(|r| r.passed || !r.asserted);
    write!(log, "{}", summary_table(&exact))?;
    if !numeric.is_empty() {
        write!(log, "{}", numeric_summary(&numeric))?;
    }
    writeln!(log, "overall: {}", if passed { "pass" } else { "FAIL" })?;

    match config.format {
        Format::Json => {
            let doc = json!({
                "seed": config.seed,
                "n_max": n_max,
                "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "passed": passed,
                "exact": exact.iter().map(report_value).collect::<Vec<_>>(),
                "numeric": numeric,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"))?;
        }
        Format::Csv => {
            writeln!(out, "kind,check,n,passed,checked,failures,residual")?;
            for r in &exact {
                writeln!(out, "exact,{},{},{},{},{},", r.check, r.n, r.passed(), r.checked, r.failures)?;
            }
            for r in &numeric {
                writeln!(out, "numeric,\"{}\",,{},,,{:e}", r.identity, r.passed, r.residual)?;
            }
        }
        Format::Text => {
            for r in &exact {
                let status = if r.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{status} {} n={} checked={} failures={}", r.check, r.n, r.checked, r.failures)?;
                for w in &r.witnesses {
                    writeln!(out, "    witness: {w}")?;
                }
            }
            for r in &numeric {
                let status = if r.passed { "pass" } else { "FAIL" };
                writeln!(out, "{status} {} residual={:e}", r.identity, r.residual)?;
            }
            writeln!(out, "overall: {}", if passed { "pass" } else { "FAIL" })?;
        }
    }
    Ok(passed)
}

/// A report without its wall-clock field, which would break reproducibility.
fn report_value(r: &Report) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    if let Value::Object(map) = &mut v {
        map.remove("elapsed_ms");
    }
    v
}

fn numeric_summary(reports: &[NumericReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = if r.passed { "pass" } else { "FAIL" };
        let _ = writeln!(s, "{status:>6}  {:<40} residual {:.2e}", r.identity, r.residual);
    }
    s
}

fn bench(size: LatticeSize, config: &RunConfig, table_config: &TableConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let n = size.get();
    let start = Instant::now();
    let (states, peak, source) = if n <= table_config.brute_force_cap {
        let t = brute_force_table(size, table_config)?;
        (t.total(), t.len(), TableSource::BruteForce)
    } else {
        let (t, stats) = transfer_table_with_stats(size, table_config)?;
        (t.total(), stats.peak_entries, TableSource::TransferMatrix)
    };
    let secs = start.elapsed().as_secs_f64();
    let rate = states.to_string().parse::<f64>().unwrap_or(f64::INFINITY) / secs.max(1e-9);
    let source = source_name(source);
    match config.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "n": n,
                "source": source,
                "states": states.to_string(),
                "seconds": secs,
                "states_per_sec": rate,
                "peak_keys": peak,
            })
        )?,
        Format::Csv => {
            writeln!(out, "n,source,states,seconds,states_per_sec,peak_keys")?;
            writeln!(out, "{n},{source},{states},{secs:.6},{rate:.3e},{peak}")?;
        }
        Format::Text => {
            writeln!(out, "n = {n} ({source})")?;
            writeln!(out, "states:      {states}")?;
            writeln!(out, "seconds:     {secs:.3}")?;
            writeln!(out, "states/sec:  {rate:.3e}")?;
            writeln!(out, "peak keys:   {peak}")?;
        }
    }
    Ok(true)
}
