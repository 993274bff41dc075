use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::formula::states_with_positive_turns;
use crate::error::{Error, Result};
use crate::model::LatticeSize;

/// Statistics of one state: positive turns `m` and face counts per color.
/// Orders lexicographically by `(m, k0, k1, k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateStats {
    pub m: usize,
    pub k0: usize,
    pub k1: usize,
    pub k2: usize,
}

impl StateStats {
    pub fn new(m: usize, k0: usize, k1: usize, k2: usize) -> Self {
        Self { m, k0, k1, k2 }
    }

    pub(crate) fn of_grid(n: usize, cells: &[u8]) -> Self {
        let mut k = [0usize; 3];
        for &c in cells {
            k[c as usize] += 1;
        }
        let cols = n + 1;
        let m = (0..n).filter(|i| cells[(2 * i + 1) * cols] == 2).count();
        Self::new(m, k[0], k[1], k[2])
    }

    pub fn color(&self, i: usize) -> usize {
        [self.k0, self.k1, self.k2][i]
    }
}

/// Sparse exact table `(m, k0, k1, k2) -> N^(m)(k0, k1, k2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    n: LatticeSize,
    entries: BTreeMap<StateStats, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    m: usize,
    k0: usize,
    k1: usize,
    k2: usize,
    count: String,
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    n: usize,
    entries: Vec<EntryRecord>,
}

impl CountTable {
    pub fn new(n: LatticeSize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> LatticeSize {
        self.n
    }

    /// Adds `count` states with statistics `key`. Zero counts are not stored.
    pub fn add(&mut self, key: StateStats, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry(key).or_default() += count;
    }

    /// Pointwise sum, for merging shards of the same lattice.
    pub fn merge(&mut self, other: CountTable) {
        assert_eq!(self.n, other.n, "cannot merge tables of different sizes");
        for (k, v) in other.entries {
            self.add(k, v);
        }
    }

    pub fn get(&self, key: &StateStats) -> BigUint {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    pub fn count(&self, m: usize, k0: usize, k1: usize, k2: usize) -> BigUint {
        self.get(&StateStats::new(m, k0, k1, k2))
    }

    /// Entries in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&StateStats, &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn total_for(&self, m: usize) -> BigUint {
        self.iter().filter(|(k, _)| k.m == m).map(|(_, v)| v).sum()
    }

    /// Counts by number of faces of `color` for fixed `m`, summing over the
    /// other two color indices.
    pub fn marginal(&self, color: usize, m: usize) -> BTreeMap<usize, BigUint> {
        assert!(color < 3, "colors are 0, 1, 2");
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (k, v) in self.iter().filter(|(k, _)| k.m == m) {
            *out.entry(k.color(color)).or_default() += v;
        }
        out
    }

    /// Checks the structural invariants: face totals, `m <= n`, and per-`m`
    /// totals equal to `C(n, m) A0_n`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n.get();
        let faces = self.n.faces();
        for k in self.entries.keys() {
            if k.k0 + k.k1 + k.k2 != faces || k.m > n {
                return Err(Error::TableCorruption(format!("invalid key {k:?}")));
            }
        }
        for m in 0..=n {
            let expected = states_with_positive_turns(n, m);
            if self.total_for(m) != expected {
                return Err(Error::TableCorruption(format!(
                    "m = {m}: total {} differs from {expected}",
                    self.total_for(m)
                )));
            }
        }
        Ok(())
    }

    /// CSV with header `m,k0,k1,k2,count`, rows sorted lexicographically.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["m", "k0", "k1", "k2", "count"]).expect("in-memory write");
        for (k, v) in self.iter() {
            w.write_record([
                k.m.to_string(),
                k.k0.to_string(),
                k.k1.to_string(),
                k.k2.to_string(),
                v.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    fn to_record(&self) -> TableRecord {
        TableRecord {
            n: self.n.get(),
            entries: self
                .iter()
                .map(|(k, v)| EntryRecord {
                    m: k.m,
                    k0: k.k0,
                    k1: k.k1,
                    k2: k.k2,
                    count: v.to_string(),
                })
                .collect(),
        }
    }

    /// `{"n": .., "entries": [{"m", "k0", "k1", "k2", "count"}]}` with counts
    /// as decimal strings.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_record()).expect("table serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: TableRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut table = CountTable::new(LatticeSize::new(rec.n)?);
        for e in rec.entries {
            let count = e
                .count
                .parse::<BigUint>()
                .map_err(|err| Error::Parse(format!("count {:?}: {err}", e.count)))?;
            table.add(StateStats::new(e.m, e.k0, e.k1, e.k2), count);
        }
        Ok(table)
    }
}
