//! Versioned JSON tables of `d^{(k)}_λ`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{strong_dim, DimensionEngine};
use crate::combinatorics::KBoundedPartition;
use crate::error::{Error, Result};
use crate::partition::Partition;

pub const TABLE_FORMAT: &str = "kcore.dimensions/v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub k: u32,
    entries: BTreeMap<Partition, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    format: String,
    k: u32,
    entries: BTreeMap<String, String>,
}

impl DimensionTable {
    pub fn new(k: u32) -> Self {
        DimensionTable { k, entries: BTreeMap::new() }
    }

    /// Every bounded partition of size at most `n_max`.
    pub fn build(k: u32, n_max: u64, engine: DimensionEngine) -> Self {
        let mut table = DimensionTable::new(k);
        for n in 0..=n_max {
            for b in crate::posets::enumerate_bounded(k, n) {
                let d = strong_dim(&b, engine);
                table.entries.insert(b.partition().clone(), d);
            }
        }
        table
    }

    pub fn insert(&mut self, b: &KBoundedPartition, d: BigUint) -> Result<()> {
        if b.k() != self.k {
            return Err(Error::Config(format!("table is for k={}, got k={}", self.k, b.k())));
        }
        self.entries.insert(b.partition().clone(), d);
        Ok(())
    }

    pub fn get(&self, p: &Partition) -> Option<&BigUint> {
        self.entries.get(p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.entries.iter()
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        let repr = TableRepr {
            format: TABLE_FORMAT.into(),
            k: self.k,
            entries: self.entries.iter().map(|(p, d)| (p.key(), d.to_string())).collect(),
        };
        serde_json::to_writer_pretty(out, &repr)?;
        Ok(())
    }

    /// Rejects foreign formats and entries that are not `k`-bounded.
    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let repr: TableRepr = serde_json::from_reader(input)?;
        if repr.format != TABLE_FORMAT {
            return Err(Error::Parse(format!("unknown table format {:?}", repr.format)));
        }
        let mut table = DimensionTable::new(repr.k);
        for (key, value) in repr.entries {
            let p: Partition = key.parse()?;
            let b = KBoundedPartition::new(p, repr.k)?;
            let d: BigUint = value.parse().map_err(|_| Error::Parse(format!("bad dimension {value:?}")))?;
            table.insert(&b, d)?;
        }
        Ok(table)
    }
}
