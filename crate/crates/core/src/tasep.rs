//! The finite chain as a multispecies TASEP on a ring of `k + 1` sites.
//!
//! Words are stored with `k + 1` in the last position. A value jumps left
//! by swapping with a larger left neighbor; value `i` jumping corresponds to
//! adding a box in column `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{enumerate_reduced_states, reduce, CorePartition, ReducedState};
use crate::error::{Error, Result};
use crate::posets::weak_covers_by_column;
use crate::report::{ClaimKind, Finding};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicState {
    word: Vec<u32>,
}

impl CyclicState {
    /// Accepts any rotation of a permutation of `1..=k+1`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidWord(format!("{word:?} is not a permutation of 1..={n}")));
            }
            seen[v as usize] = true;
        }
        if n < 2 {
            return Err(Error::InvalidWord("a ring needs at least two sites".into()));
        }
        Ok(CyclicState::normalized(word))
    }

    fn normalized(mut word: Vec<u32>) -> Self {
        let top = word.len() as u32;
        let p = word.iter().position(|&v| v == top).expect("top value present");
        word.rotate_left(p + 1);
        CyclicState { word }
    }

    pub fn identity(k: u32) -> Self {
        CyclicState { word: (1..=k + 1).collect() }
    }

    pub fn k(&self) -> u32 {
        self.word.len() as u32 - 1
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// One-based position of `value`.
    pub fn position(&self, value: u32) -> usize {
        self.word.iter().position(|&v| v == value).expect("value in word") + 1
    }

    /// The reversed word with `k + 1` kept last.
    pub fn reversed(&self) -> CyclicState {
        let mut w = self.word.clone();
        let top = w.pop().expect("non-empty");
        w.reverse();
        w.push(top);
        CyclicState { word: w }
    }
}

impl fmt::Display for CyclicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

/// `1-4-2-3-5`, `1 4 2 3 5`, or bare digits `14235` when every value is a
/// single digit.
impl FromStr for CyclicState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let tokens: Vec<&str> = if t.contains(['-', ' ', ',']) {
            t.split(['-', ' ', ',']).filter(|x| !x.is_empty()).collect()
        } else {
            t.split("").filter(|x| !x.is_empty()).collect()
        };
        let word = tokens
            .iter()
            .map(|x| x.parse::<u32>().map_err(|_| Error::InvalidWord(format!("bad entry {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CyclicState::new(word)
    }
}

impl Serialize for CyclicState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CyclicState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Places `k + 1`, then each `i = k, …, 1` exactly `l_i` cyclic steps to the
/// left of `i + 1` among the values already placed.
pub fn alpha_inv(s: &ReducedState) -> CyclicState {
    let k = s.k();
    let mut ring: Vec<u32> = vec![k + 1];
    for i in (1..=k).rev() {
        let p = ring.iter().position(|&v| v == i + 1).expect("i+1 placed");
        let len = ring.len() as i64;
        let q = (p as i64 - s.l(i) as i64).rem_euclid(len) as usize;
        ring.insert(q, i);
    }
    CyclicState::normalized(ring)
}

/// Reads `l_i` as the cyclic gap from `i` to `i + 1` among values `≥ i`.
pub fn alpha(c: &CyclicState) -> ReducedState {
    let k = c.k();
    let mut l = vec![0u32; k as usize];
    for i in 1..=k {
        let ring: Vec<u32> = c.word.iter().copied().filter(|&v| v >= i).collect();
        let pi = ring.iter().position(|&v| v == i).expect("i present");
        let pn = ring.iter().position(|&v| v == i + 1).expect("i+1 present");
        let d = (pn as i64 - pi as i64).rem_euclid(ring.len() as i64) as u32;
        l[i as usize - 1] = d - 1;
    }
    ReducedState::from_multiplicities(&l, k).expect("gaps respect l_i ≤ k - i")
}

/// One TASEP move: `value` swapped with the larger neighbor it passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Jump {
    pub value: u32,
    pub passed: u32,
    pub to: CyclicState,
}

/// Every value with a larger cyclic left neighbor jumps over it.
pub fn jumps(c: &CyclicState) -> Vec<Jump> {
    let n = c.word.len();
    let mut out = Vec::new();
    for p in 0..n {
        let left = (p + n - 1) % n;
        let (v, w) = (c.word[p], c.word[left]);
        if w > v {
            let mut word = c.word.clone();
            word.swap(p, left);
            out.push(Jump { value: v, passed: w, to: CyclicState::normalized(word) });
        }
    }
    out.sort_by_key(|j| j.value);
    out
}

/// Independent construction of the word from a core: particles sit on the
/// sites not of the form `λ_i - i + 1`; the leftmost unlabeled particle and
/// its whole residue class mod `k + 1` get the next label, and the word reads
/// the labels by residue.
pub fn word_of_core(c: &CorePartition) -> CyclicState {
    let r = c.r() as i64;
    let parts = c.parts();
    let len = parts.len() as i64;
    let vacancies: std::collections::HashSet<i64> =
        (1..=len).map(|i| parts[i as usize - 1] as i64 - i + 1).collect();
    let mut labels = vec![0u32; r as usize];
    let mut next = 1;
    let mut x = 1 - len;
    while next <= r as u32 {
        if !vacancies.contains(&x) {
            let res = x.rem_euclid(r) as usize;
            if labels[res] == 0 {
                labels[res] = next;
                next += 1;
            }
        }
        x += 1;
    }
    CyclicState::normalized(labels)
}

/// For every state, the labeled weak covers after reduction coincide with
/// the labeled TASEP jumps.
pub fn verify_tasep_equivalence(k: u32) -> Finding {
    const CLAIM: &str = "weak covers agree with TASEP jumps";
    let mut witness = None;
    let states = enumerate_reduced_states(k);
    for s in &states {
        let mut chain: Vec<(u32, ReducedState)> =
            weak_covers_by_column(s.bounded()).into_iter().map(|(col, b)| (col, reduce(&b).0)).collect();
        chain.sort_by_key(|(c, _)| *c);
        let word = alpha_inv(s);
        let tasep: Vec<(u32, ReducedState)> = jumps(&word).into_iter().map(|j| (j.value, alpha(&j.to))).collect();
        if chain != tasep {
            witness = Some(format!("state {s} (word {word}): chain {chain:?} vs tasep {tasep:?}"));
            break;
        }
    }
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(k), format!("{} states", states.len()), witness)
}

/// A move removes `□_i` exactly when value `i` passes value `i + 1`.
pub fn rectangle_jump_witness(k: u32) -> Finding {
    const CLAIM: &str = "rectangle removal is i passing i+1";
    let mut witness = None;
    let mut moves = 0;
    'outer: for s in enumerate_reduced_states(k) {
        let word = alpha_inv(&s);
        for jump in jumps(&word) {
            moves += 1;
            let cover = weak_covers_by_column(s.bounded())
                .into_iter()
                .find(|(col, _)| *col == jump.value)
                .map(|(_, b)| b);
            let Some(b) = cover else {
                witness = Some(format!("jump of {} from {word} has no weak cover", jump.value));
                break 'outer;
            };
            let ledger = reduce(&b).1;
            let removed: Vec<u32> = (1..=k).filter(|&i| ledger.counts[i as usize - 1] > 0).collect();
            let expected: Vec<u32> = if jump.passed == jump.value + 1 { vec![jump.value] } else { vec![] };
            if removed != expected {
                witness = Some(format!(
                    "state {s}, {} passes {}: removed rectangles {removed:?}",
                    jump.value, jump.passed
                ));
                break 'outer;
            }
        }
    }
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(k), format!("{moves} moves"), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{bounded_to_core, complement, k_conjugate, KBoundedPartition};

    fn st(parts: &[u32], k: u32) -> ReducedState {
        ReducedState::new(KBoundedPartition::from_parts(parts, k).unwrap()).unwrap()
    }

    fn w(s: &str) -> CyclicState {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&w("1-4-2-3-5")), st(&[3, 1], 4));
        assert_eq!(alpha(&CyclicState::identity(4)), ReducedState::empty(4));
        assert_eq!(alpha(&w("4-3-2-1-5")), st(&[3, 2, 2, 1, 1, 1], 4));
        assert_eq!(alpha_inv(&st(&[3, 3, 1, 1], 5)).to_string(), "4-2-3-5-1-6");
        assert_eq!(alpha_inv(&st(&[2, 1], 3)).to_string(), "1-3-2-4");
        assert_eq!(alpha_inv(&ReducedState::empty(5)), CyclicState::identity(5));
    }

    #[test]
    fn complement_table_words() {
        let rows = [
            ("1234", &[][..]),
            ("2341", &[1][..]),
            ("2314", &[1, 1]),
            ("2134", &[1, 1, 1]),
            ("3412", &[2]),
            ("3142", &[2, 1]),
            ("1342", &[2, 1, 1]),
            ("3421", &[2, 1, 1, 1]),
            ("3124", &[2, 2]),
            ("1324", &[2, 2, 1]),
            ("3241", &[2, 2, 1, 1]),
            ("3214", &[2, 2, 1, 1, 1]),
            ("4321", &[3, 2, 2, 1, 1, 1]),
            ("4123", &[3]),
        ];
        for (word, parts) in rows {
            let c = w(&format!("{word}5"));
            assert_eq!(alpha(&c), st(parts, 4), "{word}");
        }
    }

    #[test]
    fn parse_and_normalize() {
        assert_eq!(w("5-1-4-2-3").to_string(), "1-4-2-3-5");
        assert_eq!(w("1 4 2 3 5"), w("14235"));
        assert!("1-1-2".parse::<CyclicState>().is_err());
        assert!("1-x".parse::<CyclicState>().is_err());
        let json = serde_json::to_string(&w("14235")).unwrap();
        assert_eq!(json, "\"1-4-2-3-5\"");
        let ten: CyclicState = "10-1-2-3-4-5-6-7-8-9-11".parse().unwrap();
        assert_eq!(ten.word().last(), Some(&11));
    }

    #[test]
    fn jump_examples() {
        let j = jumps(&w("3124"));
        let got: Vec<(u32, String)> = j.iter().map(|j| (j.value, j.to.to_string())).collect();
        assert_eq!(got, vec![(1, "1-3-2-4".into()), (3, "1-2-3-4".into())]);
        let only = jumps(&CyclicState::identity(4));
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].value, 1);
        assert_eq!(alpha(&only[0].to), st(&[1], 4));
        assert_eq!(jumps(&w("4-3-2-1-5")).len(), 4);
    }

    #[test]
    fn round_trips_and_reversal() {
        for k in 1..=6 {
            for s in enumerate_reduced_states(k) {
                let c = alpha_inv(&s);
                assert_eq!(alpha(&c), s);
                assert_eq!(c.reversed(), alpha_inv(&complement(&s)), "k={k} {s}");
                assert_eq!(jumps(&c).len(), weak_covers_by_column(s.bounded()).len());
            }
        }
    }

    #[test]
    fn reversal_is_not_conjugation() {
        // ∅ is self-conjugate but its word reverses to the maximal state
        let empty = ReducedState::empty(3);
        assert_eq!(reduce(&k_conjugate(empty.bounded())).0, empty);
        assert_ne!(alpha_inv(&empty).reversed(), alpha_inv(&empty));
    }

    #[test]
    fn particle_labels_match() {
        let core = CorePartition::new("7,3,1".parse().unwrap(), 5).unwrap();
        assert_eq!(word_of_core(&core).to_string(), "1-4-2-3-5");
        for k in 2..=4 {
            for s in enumerate_reduced_states(k) {
                assert_eq!(word_of_core(&bounded_to_core(s.bounded())), alpha_inv(&s), "k={k} {s}");
            }
        }
    }

    #[test]
    fn theorem_checks_pass() {
        for k in 1..=5 {
            assert!(verify_tasep_equivalence(k).passed(), "{}", verify_tasep_equivalence(k));
            assert!(rectangle_jump_witness(k).passed(), "{}", rectangle_jump_witness(k));
        }
    }
}
