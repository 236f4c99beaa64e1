//! k-bounded partitions, (k+1)-cores, the bijection between them, k-conjugation,
//! rectangle reduction and the finite state space of k! reduced partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A partition whose largest part is at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BoundedRepr", into = "BoundedRepr")]
pub struct KBoundedPartition {
    inner: Partition,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct BoundedRepr {
    k: u32,
    parts: Partition,
}

impl TryFrom<BoundedRepr> for KBoundedPartition {
    type Error = Error;
    fn try_from(r: BoundedRepr) -> Result<Self> {
        KBoundedPartition::new(r.parts, r.k)
    }
}

impl From<KBoundedPartition> for BoundedRepr {
    fn from(b: KBoundedPartition) -> Self {
        BoundedRepr { k: b.k, parts: b.inner }
    }
}

impl KBoundedPartition {
    pub fn new(inner: Partition, k: u32) -> Result<Self> {
        if k == 0 || inner.largest() > k {
            return Err(Error::NotBounded { parts: inner.into_parts(), k });
        }
        Ok(KBoundedPartition { inner, k })
    }

    pub fn from_parts(parts: &[u32], k: u32) -> Result<Self> {
        KBoundedPartition::new(Partition::new(parts.to_vec())?, k)
    }

    pub fn empty(k: u32) -> Self {
        KBoundedPartition { inner: Partition::empty(), k }
    }

    pub(crate) fn new_unchecked(inner: Partition, k: u32) -> Self {
        debug_assert!(inner.largest() <= k);
        KBoundedPartition { inner, k }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn partition(&self) -> &Partition {
        &self.inner
    }

    pub fn parts(&self) -> &[u32] {
        self.inner.parts()
    }

    pub fn size(&self) -> u64 {
        self.inner.size()
    }

    /// `l_i` for `i = 1..=k`, stored at index `i - 1`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut l = vec![0u32; self.k as usize];
        for &p in self.inner.parts() {
            l[p as usize - 1] += 1;
        }
        l
    }

    pub fn from_multiplicities(l: &[u32], k: u32) -> Self {
        let mut parts = Vec::new();
        for size in (1..=l.len()).rev() {
            parts.extend(std::iter::repeat_n(size as u32, l[size - 1] as usize));
        }
        KBoundedPartition::new_unchecked(Partition::from_parts_unchecked(parts), k)
    }
}

impl fmt::Display for KBoundedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// A partition with no hook of length `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CoreRepr", into = "CoreRepr")]
pub struct CorePartition {
    inner: Partition,
    r: u32,
}

#[derive(Serialize, Deserialize)]
struct CoreRepr {
    r: u32,
    parts: Partition,
}

impl TryFrom<CoreRepr> for CorePartition {
    type Error = Error;
    fn try_from(c: CoreRepr) -> Result<Self> {
        CorePartition::new(c.parts, c.r)
    }
}

impl From<CorePartition> for CoreRepr {
    fn from(c: CorePartition) -> Self {
        CoreRepr { r: c.r, parts: c.inner }
    }
}

impl CorePartition {
    pub fn new(inner: Partition, r: u32) -> Result<Self> {
        if r < 2 || !inner.is_core(r) {
            return Err(Error::NotCore { parts: inner.into_parts(), r });
        }
        Ok(CorePartition { inner, r })
    }

    pub(crate) fn new_unchecked(inner: Partition, r: u32) -> Self {
        CorePartition { inner, r }
    }

    pub fn empty(r: u32) -> Self {
        CorePartition { inner: Partition::empty(), r }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The bound `k = r - 1` of the matching bounded partitions.
    pub fn k(&self) -> u32 {
        self.r - 1
    }

    pub fn partition(&self) -> &Partition {
        &self.inner
    }

    pub fn parts(&self) -> &[u32] {
        self.inner.parts()
    }

    /// Conjugation maps r-cores to r-cores.
    pub fn conjugate(&self) -> CorePartition {
        CorePartition { inner: self.inner.conjugate(), r: self.r }
    }
}

impl fmt::Display for CorePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// Counts, row by row, the cells whose hook is below `k + 1`.
pub fn core_to_bounded(c: &CorePartition) -> KBoundedPartition {
    let r = c.r();
    let parts: Vec<u32> = c
        .partition()
        .hook_lengths()
        .iter()
        .map(|row| row.iter().filter(|&&h| h < r).count() as u32)
        .collect();
    KBoundedPartition::new_unchecked(Partition::from_parts_unchecked(parts), c.k())
}

/// Inverse of [`core_to_bounded`]: rows are placed from the top (shortest)
/// down, each shifted right just far enough that its own cells all have hook
/// at most `k`.
///
/// A cell of row `i` at column `s` has leg equal to the number of rows above
/// longer than `s`, so the leftmost cell has hook `λ_i + leg(s)`. Rows already
/// placed grow towards the bottom, hence the smallest valid shift is the
/// length of the row `k + 1 - λ_i` steps above, or zero past the top.
pub fn bounded_to_core(b: &KBoundedPartition) -> CorePartition {
    let k = b.k() as usize;
    let parts = b.parts();
    let len = parts.len();
    let mut core = vec![0u32; len];
    for i in (0..len).rev() {
        let above = i + k + 1 - parts[i] as usize;
        let shift = if above < len { core[above] } else { 0 };
        core[i] = parts[i] + shift;
    }
    CorePartition::new_unchecked(Partition::from_parts_unchecked(core), b.k() + 1)
}

/// `λ^{ω_k}`: conjugate the core and map back.
pub fn k_conjugate(b: &KBoundedPartition) -> KBoundedPartition {
    core_to_bounded(&bounded_to_core(b).conjugate())
}

/// The k-rectangle `(i^{k-i+1})`.
pub fn rectangle(i: u32, k: u32) -> Partition {
    assert!((1..=k).contains(&i), "rectangle index {i} outside 1..={k}");
    Partition::from_parts_unchecked(vec![i; (k - i + 1) as usize])
}

pub fn rectangle_area(i: u32, k: u32) -> u64 {
    i as u64 * (k - i + 1) as u64
}

/// Element of the finite state space: `l_i ≤ k - i` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ReducedRepr", into = "ReducedRepr")]
pub struct ReducedState {
    inner: KBoundedPartition,
    l: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ReducedRepr {
    k: u32,
    l: Vec<u32>,
    #[serde(default, skip_deserializing)]
    parts: Partition,
}

impl TryFrom<ReducedRepr> for ReducedState {
    type Error = Error;
    fn try_from(r: ReducedRepr) -> Result<Self> {
        ReducedState::from_multiplicities(&r.l, r.k)
    }
}

impl From<ReducedState> for ReducedRepr {
    fn from(s: ReducedState) -> Self {
        ReducedRepr { k: s.k(), parts: s.inner.inner, l: s.l }
    }
}

impl ReducedState {
    pub fn new(b: KBoundedPartition) -> Result<Self> {
        let l = b.multiplicities();
        let k = b.k();
        if let Some((i, &li)) = l.iter().enumerate().find(|(i, &li)| li > k - (*i as u32 + 1)) {
            return Err(Error::InvalidState {
                k,
                reason: format!("l_{} = {li} exceeds {}", i + 1, k - (i as u32 + 1)),
            });
        }
        Ok(ReducedState { inner: b, l })
    }

    pub fn from_multiplicities(l: &[u32], k: u32) -> Result<Self> {
        if l.len() != k as usize {
            return Err(Error::LengthMismatch { expected: k as usize, actual: l.len() });
        }
        ReducedState::new(KBoundedPartition::from_multiplicities(l, k))
    }

    pub fn empty(k: u32) -> Self {
        ReducedState { inner: KBoundedPartition::empty(k), l: vec![0; k as usize] }
    }

    pub fn k(&self) -> u32 {
        self.inner.k()
    }

    pub fn bounded(&self) -> &KBoundedPartition {
        &self.inner
    }

    pub fn partition(&self) -> &Partition {
        self.inner.partition()
    }

    pub fn parts(&self) -> &[u32] {
        self.inner.parts()
    }

    /// `(l_1, …, l_k)`.
    pub fn multiplicities(&self) -> &[u32] {
        &self.l
    }

    /// `l_i` with `i` one-based.
    pub fn l(&self, i: u32) -> u32 {
        self.l[i as usize - 1]
    }

    pub fn size(&self) -> u64 {
        self.inner.size()
    }
}

impl fmt::Display for ReducedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// Number of i-rectangles removed, `counts[i - 1] = c_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectangleLedger {
    pub counts: Vec<u64>,
}

impl RectangleLedger {
    pub fn zero(k: u32) -> Self {
        RectangleLedger { counts: vec![0; k as usize] }
    }

    pub fn k(&self) -> u32 {
        self.counts.len() as u32
    }

    /// Total removed area `Σ c_i · i(k-i+1)`.
    pub fn area(&self) -> u64 {
        let k = self.k();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c * rectangle_area(i as u32 + 1, k))
            .sum()
    }

    pub fn record(&mut self, i: u32) {
        self.counts[i as usize - 1] += 1;
    }
}

/// Removes full rectangles from the multiset of parts until every
/// `l_i ≤ k - i`.
pub fn reduce(b: &KBoundedPartition) -> (ReducedState, RectangleLedger) {
    let k = b.k();
    let mut l = b.multiplicities();
    let mut ledger = RectangleLedger::zero(k);
    for i in 1..=k {
        let height = k - i + 1;
        let idx = i as usize - 1;
        ledger.counts[idx] = (l[idx] / height) as u64;
        l[idx] %= height;
    }
    let state = ReducedState { inner: KBoundedPartition::from_multiplicities(&l, k), l };
    (state, ledger)
}

/// `l_i ↦ k - i - l_i`.
pub fn complement(s: &ReducedState) -> ReducedState {
    let k = s.k();
    let l: Vec<u32> = s.l.iter().enumerate().map(|(i, &li)| k - (i as u32 + 1) - li).collect();
    ReducedState { inner: KBoundedPartition::from_multiplicities(&l, k), l }
}

/// `Σ_{i<k} l_i · (k-i)!`; a bijection onto `0..k!`.
pub fn factorial_index(s: &ReducedState) -> usize {
    let k = s.k() as usize;
    (1..k).map(|i| s.l[i - 1] as usize * factorial(k - i)).sum()
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All k! reduced states in factorial-index order.
pub fn enumerate_reduced_states(k: u32) -> Vec<ReducedState> {
    assert!(k >= 1, "k must be positive");
    let ku = k as usize;
    let total = factorial(ku);
    (0..total)
        .map(|mut idx| {
            let mut l = vec![0u32; ku];
            for i in 1..ku {
                let w = factorial(ku - i);
                l[i - 1] = (idx / w) as u32;
                idx %= w;
            }
            ReducedState { inner: KBoundedPartition::from_multiplicities(&l, k), l }
        })
        .collect()
}

/// Reassembles the bounded partition `reduced ∪ rectangles`.
pub fn expand(reduced: &ReducedState, ledger: &RectangleLedger) -> KBoundedPartition {
    let k = reduced.k();
    let l: Vec<u32> = reduced
        .multiplicities()
        .iter()
        .zip(&ledger.counts)
        .enumerate()
        .map(|(i, (&li, &c))| li + (c as u32) * (k - i as u32))
        .collect();
    KBoundedPartition::from_multiplicities(&l, k)
}
