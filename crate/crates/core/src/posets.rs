//! Weak and strong orders on (k+1)-cores and k-bounded partitions.

use std::collections::HashMap;
use std::io::Write;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{bounded_to_core, core_to_bounded, k_conjugate, CorePartition, KBoundedPartition};
use crate::error::Result;
use crate::partition::Partition;

/// Outer and inner shape of a skew diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Option<Self> {
        inner.is_contained_in(&outer).then_some(SkewShape { outer, inner })
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.outer.skew_cells(&self.inner)
    }

    /// Connected components under edge adjacency.
    pub fn components(&self) -> usize {
        count_components(&self.cells())
    }
}

fn count_components(cells: &[(usize, usize)]) -> usize {
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut seen = vec![false; cells.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (r, c) = cells[i];
            let mut nbrs = vec![(r + 1, c), (r, c + 1)];
            if r > 0 {
                nbrs.push((r - 1, c));
            }
            if c > 0 {
                nbrs.push((r, c - 1));
            }
            for n in nbrs {
                if let Some(&j) = index.get(&n) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    count
}

/// `from ⇒ to` in the strong order, with the number of connected components
/// of `to / from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCover {
    pub from: CorePartition,
    pub to: CorePartition,
    pub components: usize,
}

fn residue(row: usize, col: usize, r: u32) -> u32 {
    (col as i64 - row as i64).rem_euclid(r as i64) as u32
}

/// Weak covers of a core, one per residue class that can be added.
pub fn weak_covers_core(c: &CorePartition) -> Vec<(u32, CorePartition)> {
    let r = c.r();
    let p = c.partition();
    let addable = p.addable_cells();
    let removable = p.removable_cells();
    let mut out = Vec::new();
    for res in 0..r {
        let rows: Vec<usize> =
            addable.iter().filter(|&&(i, j)| residue(i, j, r) == res).map(|&(i, _)| i).collect();
        if rows.is_empty() || removable.iter().any(|&(i, j)| residue(i, j, r) == res) {
            continue;
        }
        let mut parts = p.parts().to_vec();
        for &row in &rows {
            if row == parts.len() {
                parts.push(1);
            } else {
                parts[row] += 1;
            }
        }
        out.push((res, CorePartition::new_unchecked(Partition::from_parts_unchecked(parts), r)));
    }
    out
}

/// Weak covers as `(column, μ)`, where `column` is the one-based column of the
/// added box (equivalently the size of the part that grew).
pub fn weak_covers_by_column(b: &KBoundedPartition) -> Vec<(u32, KBoundedPartition)> {
    let k = b.k();
    let conj = k_conjugate(b);
    let mut out: Vec<(u32, KBoundedPartition)> = b
        .partition()
        .addable_cells()
        .into_iter()
        .filter(|&(_, col)| col < k as usize)
        .filter_map(|(row, col)| {
            let mu = KBoundedPartition::new_unchecked(b.partition().with_box_in_row(row), k);
            conj.partition()
                .is_contained_in(k_conjugate(&mu).partition())
                .then_some((col as u32 + 1, mu))
        })
        .collect();
    out.sort_by_key(|(col, _)| *col);
    out
}

/// All `μ` with `|μ| = |b| + 1`, `b ⊆ μ` and `b^{ω_k} ⊆ μ^{ω_k}`.
pub fn weak_covers_bounded(b: &KBoundedPartition) -> Vec<KBoundedPartition> {
    weak_covers_by_column(b).into_iter().map(|(_, mu)| mu).collect()
}

/// All `μ` with `μ →_k b`.
pub fn weak_down_covers_bounded(b: &KBoundedPartition) -> Vec<KBoundedPartition> {
    let k = b.k();
    let conj = k_conjugate(b);
    b.partition()
        .removable_cells()
        .into_iter()
        .map(|(row, _)| KBoundedPartition::new_unchecked(b.partition().without_box_in_row(row), k))
        .filter(|mu| k_conjugate(mu).partition().is_contained_in(conj.partition()))
        .collect()
}

/// Partitions of `n` with parts at most `k`, in decreasing lexicographic order.
pub fn enumerate_bounded(k: u32, n: u64) -> Vec<KBoundedPartition> {
    fn rec(remaining: u64, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let top = (max as u64).min(remaining) as u32;
        for part in (1..=top).rev() {
            current.push(part);
            rec(remaining - part as u64, part, current, out);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, k, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| KBoundedPartition::new_unchecked(Partition::from_parts_unchecked(parts), k))
        .collect()
}

type LevelCache = RwLock<HashMap<(u32, u64), Arc<Vec<CorePartition>>>>;

fn level_cache() -> &'static LevelCache {
    static CACHE: OnceLock<LevelCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every (k+1)-core whose bounded image has size `m`, in the order of
/// [`enumerate_bounded`].
pub fn core_level(k: u32, m: u64) -> Arc<Vec<CorePartition>> {
    if let Some(level) = level_cache().read().unwrap().get(&(k, m)) {
        return level.clone();
    }
    let level: Arc<Vec<CorePartition>> = Arc::new(enumerate_bounded(k, m).iter().map(bounded_to_core).collect());
    level_cache().write().unwrap().entry((k, m)).or_insert(level).clone()
}

fn strong_cover(from: &CorePartition, to: &CorePartition) -> Option<StrongCover> {
    if !from.partition().is_contained_in(to.partition()) {
        return None;
    }
    let cells = to.partition().skew_cells(from.partition());
    Some(StrongCover { from: from.clone(), to: to.clone(), components: count_components(&cells) })
}

/// All strong covers of `c`: cores one bounded-size higher that contain it.
pub fn strong_covers(c: &CorePartition) -> Vec<StrongCover> {
    let m = core_to_bounded(c).size();
    core_level(c.k(), m + 1).iter().filter_map(|to| strong_cover(c, to)).collect()
}

/// All `τ ⇒ c`.
pub fn strong_down_covers(c: &CorePartition) -> Vec<StrongCover> {
    let m = core_to_bounded(c).size();
    if m == 0 {
        return Vec::new();
    }
    core_level(c.k(), m - 1).iter().filter_map(|from| strong_cover(from, c)).collect()
}

type WeakCache = RwLock<HashMap<KBoundedPartition, BigUint>>;

fn weak_cache() -> &'static WeakCache {
    static CACHE: OnceLock<WeakCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Number of weak-order paths from `∅` to `b`.
pub fn weak_dim(b: &KBoundedPartition) -> BigUint {
    if b.size() == 0 {
        return BigUint::one();
    }
    if let Some(v) = weak_cache().read().unwrap().get(b) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for mu in weak_down_covers_bounded(b) {
        total += weak_dim(&mu);
    }
    weak_cache().write().unwrap().insert(b.clone(), total.clone());
    total
}

/// Strong cover edges between all levels below `n_max`, as CSV
/// `from,to,components` with partitions in `[a,b,c]` form.
pub fn write_strong_edges_csv<W: Write>(k: u32, n_max: u64, mut out: W) -> Result<()> {
    writeln!(out, "from,to,components")?;
    for m in 0..n_max {
        let edges: Vec<StrongCover> = core_level(k, m)
            .par_iter()
            .flat_map_iter(strong_covers)
            .collect();
        for e in edges {
            writeln!(out, "\"{}\",\"{}\",{}", e.from.partition().key(), e.to.partition().key(), e.components)?;
        }
    }
    Ok(())
}
