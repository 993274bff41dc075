use std::collections::HashMap;

use num_bigint::BigUint;

use super::{CountTable, StateStats, TableConfig};
use crate::error::{Error, Result};
use crate::model::{for_each_grid, LatticeSize};

/// Tallies the statistics of every enumerated state.
pub fn brute_force_table(n: LatticeSize, config: &TableConfig) -> Result<CountTable> {
    if n.get() > config.brute_force_cap {
        return Err(Error::CapExceeded {
            what: "brute-force enumeration",
            n: n.get(),
            cap: config.brute_force_cap,
            hint: "use the transfer-matrix table instead",
        });
    }
    let mut tally: HashMap<StateStats, u64> = HashMap::new();
    for_each_grid(n, |grid| {
        *tally.entry(StateStats::of_grid(n.get(), grid)).or_default() += 1;
    });
    let mut table = CountTable::new(n);
    for (k, v) in tally {
        table.add(k, BigUint::from(v));
    }
    Ok(table)
}
