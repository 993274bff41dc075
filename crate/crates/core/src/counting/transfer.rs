use num_bigint::BigUint;
use rayon::prelude::*;

use super::{CountTable, StateStats, TableConfig};
use crate::error::{Error, Result};
use crate::model::{fixed_color, LatticeSize};

// Packed statistic key: m in bits 20.., k0 in bits 10..20, k1 in bits 0..10.
// Face counts stay below 1024 up to n = 21, far beyond any feasible cap.
const K0_SHIFT: u32 = 10;
const M_SHIFT: u32 = 20;
const FIELD: u32 = (1 << K0_SHIFT) - 1;

/// Sorted `(packed key, count)` pairs for one row pattern.
type Counts = Vec<(u32, u128)>;

/// Row color patterns admissible for face row `r`: proper along the row and
/// agreeing with the fixed boundary faces.
fn row_patterns(n: usize, r: usize) -> Vec<Vec<u8>> {
    fn extend(n: usize, r: usize, row: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let c = row.len();
        if c == n + 1 {
            out.push(row.clone());
            return;
        }
        let fixed;
        let choices: &[u8] = match fixed_color(n, r, c) {
            Some(v) => {
                fixed = [v];
                &fixed
            }
            None if c == 0 => &[1, 2],
            None => &[0, 1, 2],
        };
        for &v in choices {
            if c > 0 && row[c - 1] == v {
                continue;
            }
            row.push(v);
            extend(n, r, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, r, &mut Vec::with_capacity(n + 1), &mut out);
    out
}

fn pattern_key(n: usize, r: usize, pattern: &[u8]) -> u32 {
    let mut k = [0u32; 3];
    for &c in pattern {
        k[c as usize] += 1;
    }
    let m = u32::from(r % 2 == 1 && r < 2 * n && pattern[0] == 2);
    (m << M_SHIFT) | (k[0] << K0_SHIFT) | k[1]
}

fn compatible(above: &[u8], below: &[u8]) -> bool {
    above.iter().zip(below).all(|(a, b)| a != b)
}

/// Sums the predecessor count lists and shifts every key by `shift`.
fn combine(sources: &[&Counts], shift: u32) -> Result<Counts> {
    let mut all: Vec<(u32, u128)> = sources.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable_by_key(|&(k, _)| k);
    let mut out: Counts = Vec::with_capacity(all.len());
    for (k, v) in all {
        match out.last_mut() {
            Some((lk, lv)) if *lk == k + shift => {
                *lv = lv
                    .checked_add(v)
                    .ok_or_else(|| Error::Consistency("transfer count overflow".into()))?;
            }
            _ => out.push((k + shift, v)),
        }
    }
    Ok(out)
}

/// Work done by one transfer-matrix run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TransferStats {
    /// Largest number of `(pattern, m, k0, k1)` counts held at once.
    pub peak_entries: usize,
}

/// Builds the count table row by row. The state is the color pattern of the
/// current face row; each pattern carries exact counts indexed by
/// `(m, k0, k1)`, with `k2` implied by the face total.
pub fn transfer_table(n: LatticeSize, config: &TableConfig) -> Result<CountTable> {
    transfer_table_with_stats(n, config).map(|(t, _)| t)
}

pub fn transfer_table_with_stats(n: LatticeSize, config: &TableConfig) -> Result<(CountTable, TransferStats)> {
    let nn = n.get();
    if nn > config.transfer_cap {
        return Err(Error::CapExceeded {
            what: "transfer-matrix table",
            n: nn,
            cap: config.transfer_cap,
            hint: "raise the cap explicitly if the runtime is acceptable",
        });
    }
    let rows = n.rows();
    let mut stats = TransferStats::default();
    let mut patterns = row_patterns(nn, 0);
    let mut counts: Vec<Counts> = patterns
        .iter()
        .map(|p| vec![(pattern_key(nn, 0, p), 1u128)])
        .collect();

    for r in 1..rows {
        let next = row_patterns(nn, r);
        let step: Vec<Counts> = next
            .par_iter()
            .map(|p| {
                let sources: Vec<&Counts> = patterns
                    .iter()
                    .zip(&counts)
                    .filter(|(q, c)| !c.is_empty() && compatible(q, p))
                    .map(|(_, c)| c)
                    .collect();
                combine(&sources, pattern_key(nn, r, p))
            })
            .collect::<Result<_>>()?;
        let held: usize = step.iter().map(Vec::len).sum();
        stats.peak_entries = stats.peak_entries.max(held);
        if held > config.memory_budget {
            return Err(Error::MemoryBudget {
                n: nn,
                budget: config.memory_budget,
            });
        }
        patterns = next;
        counts = step;
    }

    let faces = n.faces();
    let mut table = CountTable::new(n);
    for c in counts {
        for (key, v) in c {
            let m = (key >> M_SHIFT) as usize;
            let k0 = ((key >> K0_SHIFT) & FIELD) as usize;
            let k1 = (key & FIELD) as usize;
            table.add(StateStats::new(m, k0, k1, faces - k0 - k1), BigUint::from(v));
        }
    }
    Ok((table, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{brute_force_table, vsasm_count};

    fn size(n: usize) -> LatticeSize {
        LatticeSize::new(n).unwrap()
    }

    #[test]
    fn patterns_respect_boundary() {
        // n = 2, row 1: (1, 0) in {1, 2}, (1, 2) fixed to 1.
        let p = row_patterns(2, 1);
        assert!(p.iter().all(|row| row[0] != 0 && row[2] == 1));
        assert_eq!(row_patterns(2, 0), vec![vec![0, 1, 2]]);
        assert_eq!(row_patterns(2, 4), vec![vec![0, 2, 1]]);
    }

    #[test]
    fn agrees_with_brute_force() {
        let cfg = TableConfig::default();
        for n in 1..=4 {
            assert_eq!(
                transfer_table(size(n), &cfg).unwrap(),
                brute_force_table(size(n), &cfg).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn n6_vsasm_total() {
        let t = transfer_table(size(6), &TableConfig::default()).unwrap();
        assert_eq!(t.total_for(0), vsasm_count(6));
    }

    #[test]
    fn refusals() {
        let cfg = TableConfig {
            transfer_cap: 3,
            memory_budget: 10,
            ..Default::default()
        };
        assert!(matches!(
            transfer_table(size(4), &cfg),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(
            transfer_table(size(3), &cfg),
            Err(Error::MemoryBudget { n: 3, budget: 10 })
        );
    }
}
