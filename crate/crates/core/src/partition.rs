//! Integer partitions stored as weakly decreasing part lists.
//!
//! Row 0 holds the largest part. Cells are addressed `(row, col)` with both
//! coordinates zero-based, and the content of a cell is `col - row`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validating constructor. Rejects zero parts and increasing pairs.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the input and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i`, or zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.largest() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// Number of parts equal to `size`.
    pub fn multiplicity(&self, size: u32) -> usize {
        self.parts.iter().filter(|&&p| p == size).count()
    }

    /// Cell-wise containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| {
                        let arm = row - j as u32 - 1;
                        let leg = conj.parts[j] - i as u32 - 1;
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// True when no cell has hook length exactly `r`.
    pub fn is_core(&self, r: u32) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h != r)
    }

    /// Rows where a box may be added, as `(row, col)` cells.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            let len = self.part(i);
            if i == 0 || self.part(i - 1) > len {
                out.push((i, len as usize));
            }
        }
        out
    }

    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.part(i + 1) < self.parts[i])
            .map(|i| (i, self.parts[i] as usize - 1))
            .collect()
    }

    /// Adds one box at the end of `row`. The caller guarantees addability.
    pub fn with_box_in_row(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition::from_parts_unchecked(parts)
    }

    pub fn without_box_in_row(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition::from_parts_unchecked(parts)
    }

    /// Cells of `self / inner`, assuming `inner ⊆ self`.
    pub fn skew_cells(&self, inner: &Partition) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in inner.part(i)..row {
                cells.push((i, j as usize));
            }
        }
        cells
    }

    /// `[4,3,1]`; the key format used by every JSON table.
    pub fn key(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        format!("[{}]", inner.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let inner: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// Accepts `[4,3,1]`, `(4,3,1)`, `4,3,1`, `4 3 1`, and `∅`/`[]`/empty for the
/// empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Ordinary standard-tableau count by the hook-length formula.
pub fn hook_length_dimension(p: &Partition) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    use num_traits::One;
    let n = p.size();
    let mut num = BigUint::one();
    for i in 2..=n {
        num *= BigUint::from(i);
    }
    let mut den = BigUint::one();
    for h in p.hook_lengths().into_iter().flatten() {
        den *= BigUint::from(h);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hooks_of_small_shapes() {
        assert_eq!(p(&[2, 1]).hook_lengths(), vec![vec![3, 1], vec![1]]);
        assert!(Partition::empty().hook_lengths().is_empty());
    }

    #[test]
    fn hooks_of_the_large_five_core() {
        let hooks = p(&[12, 8, 5, 5, 2, 2, 1]).hook_lengths();
        assert_eq!(hooks[0], vec![18, 16, 13, 12, 11, 8, 7, 6, 4, 3, 2, 1]);
        assert_eq!(hooks[1], vec![13, 11, 8, 7, 6, 3, 2, 1]);
    }

    #[test]
    fn core_detection() {
        assert!(p(&[7, 3, 1]).is_core(5));
        assert!(!p(&[3, 1]).is_core(4));
        assert!(Partition::empty().is_core(2));
        assert!(Partition::empty().is_core(7));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("[4,3,1]".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("(4, 3, 1)".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("4 3 1".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("∅".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,x]".parse::<Partition>().is_err());
    }

    #[test]
    fn json_is_a_plain_array() {
        assert_eq!(serde_json::to_string(&p(&[4, 3, 1])).unwrap(), "[4,3,1]");
        let back: Partition = serde_json::from_str("[4,3,1]").unwrap();
        assert_eq!(back, p(&[4, 3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn conjugate_and_cells() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1]).addable_cells(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(p(&[2, 2]).removable_cells(), vec![(1, 1)]);
        assert_eq!(p(&[3, 1]).skew_cells(&p(&[1])), vec![(0, 1), (0, 2), (1, 0)]);
    }

    #[test]
    fn hook_formula() {
        assert_eq!(hook_length_dimension(&p(&[2, 1, 1])), 3u32.into());
        assert_eq!(hook_length_dimension(&p(&[3, 2])), 5u32.into());
        assert_eq!(hook_length_dimension(&Partition::empty()), 1u32.into());
    }
}
