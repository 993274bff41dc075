//! Exact count tables `N^(m)(k0, k1, k2)`: the number of states with `m`
//! positive turns and `k_i` faces of color `i`.

mod brute;
mod formula;
mod table;
mod transfer;

pub use brute::brute_force_table;
pub use formula::{binomial, states_with_positive_turns, vsasm_count};
pub use table::{CountTable, StateStats};
pub use transfer::{transfer_table, transfer_table_with_stats, TransferStats};

/// Engineering limits for table construction. They bound runtime and memory
/// only; results never depend on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableConfig {
    pub brute_force_cap: usize,
    pub transfer_cap: usize,
    /// Maximum number of `(pattern, m, k0, k1)` counts held at once by the
    /// transfer matrix.
    pub memory_budget: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            brute_force_cap: 5,
            transfer_cap: 9,
            memory_budget: 60_000_000,
        }
    }
}

/// Which construction produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableSource {
    BruteForce,
    TransferMatrix,
}

/// Brute force within its cap, the transfer matrix beyond it.
pub fn best_table(n: crate::LatticeSize, config: &TableConfig) -> crate::Result<(CountTable, TableSource)> {
    if n.get() <= config.brute_force_cap {
        Ok((brute_force_table(n, config)?, TableSource::BruteForce))
    } else {
        Ok((transfer_table(n, config)?, TableSource::TransferMatrix))
    }
}
