//! Expansions of the triangular operator product
//! `R^△_t = ∏_{1 ≤ i < j ≤ t} (1 - R_{ij})` and the cancellation lemmas used
//! to evaluate it on partitions ending in a column of ones.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::raising::{evaluate, evaluate_small, raising_apply, IntVector, OperatorSet};
use crate::combinatorics::KBoundedPartition;
use crate::error::{Error, Result};

/// Every pair `(i, j)` with `1 ≤ i < j ≤ t`.
fn all_pairs(t: usize) -> Vec<(usize, usize)> {
    (1..=t).flat_map(|i| (i + 1..=t).map(move |j| (i, j))).collect()
}

/// Inversion sets of all `t!` permutations of `[t]`, one term each.
pub fn triangle_expand_inversions(t: usize) -> Vec<OperatorSet> {
    let mut perm: Vec<usize> = (1..=t).collect();
    let mut out = Vec::new();
    permute(&mut perm, 0, &mut out);
    out.sort();
    out
}

fn permute(perm: &mut Vec<usize>, start: usize, out: &mut Vec<OperatorSet>) {
    if start + 1 >= perm.len() {
        let mut inv = Vec::new();
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    inv.push((perm[b], perm[a]));
                }
            }
        }
        out.push(OperatorSet::new(inv).expect("inversions are ordered pairs"));
        return;
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        permute(perm, start + 1, out);
        perm.swap(start, i);
    }
}

/// All `2^{C(t,2)}` subsets of pairs, before any cancellation.
pub fn naive_triangle_expansion(t: usize) -> Vec<OperatorSet> {
    let pairs = all_pairs(t);
    assert!(pairs.len() < 32, "naive expansion limited to t ≤ 8");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
            OperatorSet::new(chosen).expect("subset of valid pairs")
        })
        .collect()
}

/// Intervals `[i_r, j_r]` of a subset `U ⊆ [k]`: `i_r` is the next element of
/// `U` past `j_{r-1}` and `j_r` the first index after `i_r` outside `U`.
fn intervals(u: &[bool]) -> Vec<(usize, usize)> {
    let k = u.len();
    let mut out = Vec::new();
    let mut pos = 1;
    while pos <= k {
        if u[pos - 1] {
            let mut j = pos + 1;
            while j <= k && u[j - 1] {
                j += 1;
            }
            out.push((pos, j));
            pos = j + 1;
        } else {
            pos += 1;
        }
    }
    out
}

fn interval_term(u: &[bool]) -> OperatorSet {
    let pairs = intervals(u).into_iter().flat_map(|(i, j)| (i + 1..=j).map(move |c| (i, c))).collect();
    OperatorSet::new(pairs).expect("interval pairs are ordered")
}

/// The raw `2^k` interval terms over `U ⊆ [k]`. Terms may use index `k + 1`.
pub fn triangle_expand_intervals_unpruned(k: usize) -> Vec<OperatorSet> {
    (0u64..1 << k)
        .map(|mask| {
            let u: Vec<bool> = (0..k).map(|b| mask >> b & 1 == 1).collect();
            interval_term(&u)
        })
        .collect()
}

/// Interval terms acting on `k` entries. Intervals reaching index `k + 1`
/// would lower an entry outside the block and are dropped, which leaves the
/// `2^{k-1}` subsets `U ⊆ [k-1]`.
pub fn triangle_expand_intervals(k: usize) -> Vec<OperatorSet> {
    triangle_expand_intervals_unpruned(k).into_iter().filter(|x| x.max_index() <= k).collect()
}

/// `Σ (-1)^{m-t} / (c_1! ⋯ c_t!)` over all compositions of `m`.
pub fn composition_sum(m: u32) -> BigRational {
    assert!((1..64).contains(&m), "composition sum needs 1 ≤ m < 64");
    let fact: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain((1..=m as u64).scan(BigInt::one(), |acc, i| {
            *acc *= i;
            Some(acc.clone())
        }))
        .collect();
    let mut total = BigRational::zero();
    // bit b set means a cut after position b + 1
    for cuts in 0u64..1 << (m - 1) {
        let mut den = BigInt::one();
        let mut last = 0;
        let mut parts = 0;
        for pos in 1..=m {
            if pos == m || cuts >> (pos - 1) & 1 == 1 {
                den *= &fact[(pos - last) as usize];
                last = pos;
                parts += 1;
            }
        }
        let term = BigRational::new(BigInt::one(), den);
        if (m - parts).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Whether `R^△_{t+1}` applied to the `t + 1` entries of `mu` sums to zero.
pub fn triangle_vanishes(mu: &IntVector, t: usize) -> Result<bool> {
    if mu.len() != t + 1 {
        return Err(Error::LengthMismatch { expected: t + 1, actual: mu.len() });
    }
    let terms = triangle_expand_inversions(t + 1);
    match evaluate_small(&terms, &mu.0) {
        Some(v) => Ok(v == 0),
        None => Ok(evaluate(&terms, mu)?.is_zero()),
    }
}

/// Value of the triangle on `block` consecutive entries starting after
/// `offset`, applied to `v`.
pub fn triangle_on_block(v: &IntVector, offset: usize, block: usize) -> Result<BigInt> {
    let terms: Vec<OperatorSet> = triangle_expand_inversions(block).iter().map(|x| x.shifted(offset)).collect();
    evaluate(&terms, v)
}

/// Which column-of-ones lemma to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LongColumnLemma {
    /// `l_1(λ) = k - 1`, triangle on the `k - 1` ones.
    KMinusOneOnes,
    /// `l_1(λ) = k`, triangle on the `k` ones.
    KOnes,
}

impl LongColumnLemma {
    fn ones(self, k: usize) -> usize {
        match self {
            LongColumnLemma::KMinusOneOnes => k - 1,
            LongColumnLemma::KOnes => k,
        }
    }
}

/// Largest operator window from the non-one rows that is enumerated.
pub const MAX_LONG_COLUMN_OPERATORS: usize = 18;

/// Operators `(i, j)` with `i` a row longer than one and `i < j ≤ k - λ_i + i`,
/// together with the smallest column that counts as moving a box out of the
/// column of ones.
pub fn long_column_window(b: &KBoundedPartition, lemma: LongColumnLemma) -> Result<(Vec<(usize, usize)>, usize)> {
    let k = b.k() as usize;
    let ones = lemma.ones(k);
    let l1 = b.multiplicities().first().copied().unwrap_or(0) as usize;
    if l1 != ones {
        return Err(Error::Precondition(format!("{b} has {l1} parts equal to 1, lemma needs {ones}")));
    }
    let len = b.parts().len();
    let top_rows = len - ones;
    let mut window = Vec::new();
    for i in 1..=top_rows {
        let part = b.parts()[i - 1] as usize;
        for j in i + 1..=k - part + i {
            window.push((i, j));
        }
    }
    Ok((window, len + 2 - k))
}

/// Checks that every qualifying `X` annihilates `λ` under the triangle on its
/// column of ones. Returns `Ok(true)` when the qualifying family is empty.
pub fn verify_long_column(b: &KBoundedPartition, lemma: LongColumnLemma) -> Result<bool> {
    let (window, threshold) = long_column_window(b, lemma)?;
    if window.len() > MAX_LONG_COLUMN_OPERATORS {
        return Err(Error::Precondition(format!("operator window of {} pairs is too large", window.len())));
    }
    let ones = lemma.ones(b.k() as usize);
    let len = b.parts().len();
    let base = IntVector(b.parts().iter().map(|&p| p as i64).collect());
    for mask in 0u32..1 << window.len() {
        let x: Vec<(usize, usize)> =
            window.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &p)| p).collect();
        if !x.iter().any(|&(_, j)| j >= threshold) {
            continue;
        }
        let moved = raising_apply(&OperatorSet::new(x)?, &base)?;
        if !triangle_on_block(&moved, len - ones, ones)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The identity behind the `1/k` rate: on `t` ones the triangle reduces to
/// `t! · Σ_compositions (-1)^{t-s}/(c_1!⋯c_s!) = 1`.
pub fn ones_block_value(t: usize) -> BigUint {
    let v = IntVector(vec![1; t]);
    evaluate(&triangle_expand_inversions(t), &v)
        .expect("indices stay inside the block")
        .to_biguint()
        .expect("non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(terms: &[OperatorSet]) -> Vec<String> {
        let mut v: Vec<String> = terms.iter().map(|x| x.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn inversion_terms_for_two_and_three() {
        assert_eq!(render(&triangle_expand_inversions(2)), vec!["1", "R12"]);
        let three = triangle_expand_inversions(3);
        assert_eq!(three.len(), 6);
        assert_eq!(render(&three), vec!["1", "R12", "R12·R13", "R12·R13·R23", "R13·R23", "R23"]);
    }

    #[test]
    fn interval_displays() {
        assert_eq!(render(&triangle_expand_intervals(3)), vec!["1", "R12", "R12·R13", "R23"]);
        let four = triangle_expand_intervals(4);
        let signed: Vec<(i32, String)> = four.iter().map(|x| (x.sign(), x.to_string())).collect();
        assert_eq!(four.len(), 8);
        for want in [
            (1, "1"),
            (-1, "R12"),
            (-1, "R23"),
            (-1, "R34"),
            (1, "R12·R13"),
            (1, "R23·R24"),
            (1, "R12·R34"),
            (-1, "R12·R13·R14"),
        ] {
            assert!(signed.contains(&(want.0, want.1.to_string())), "missing {want:?}");
        }
        assert_eq!(triangle_expand_intervals(5).len(), 16);
        assert_eq!(triangle_expand_intervals_unpruned(4).len(), 16);
    }

    #[test]
    fn interval_and_inversion_expansions_agree_on_ones() {
        for t in 1..=7 {
            let ones = IntVector(vec![1; t]);
            let inv = evaluate(&triangle_expand_inversions(t), &ones).unwrap();
            assert_eq!(evaluate(&triangle_expand_intervals(t), &ones).unwrap(), inv);
            let mut padded = vec![1; t];
            padded.push(0);
            assert_eq!(evaluate(&triangle_expand_intervals_unpruned(t), &IntVector(padded)).unwrap(), inv);
            assert_eq!(inv, BigInt::one());
        }
    }

    #[test]
    fn composition_sums() {
        assert_eq!(composition_sum(1), BigRational::one());
        assert_eq!(composition_sum(2), BigRational::new(1.into(), 2.into()));
        assert_eq!(composition_sum(6), BigRational::new(1.into(), 720.into()));
    }

    #[test]
    fn triangle_zero_cases() {
        for c in 0..4 {
            assert!(triangle_vanishes(&vec![c, c + 1].into(), 1).unwrap());
        }
        assert!(triangle_vanishes(&vec![5, 5, 5, 7].into(), 3).unwrap());
        assert!(!triangle_vanishes(&vec![5, 5, 5, 5].into(), 3).unwrap());
        assert!(triangle_vanishes(&vec![1, 2].into(), 2).is_err());
    }

    #[test]
    fn long_column_examples() {
        let b = KBoundedPartition::from_parts(&[2, 1, 1], 3).unwrap();
        assert!(verify_long_column(&b, LongColumnLemma::KMinusOneOnes).unwrap());
        let b = KBoundedPartition::from_parts(&[2, 1, 1, 1], 3).unwrap();
        assert!(verify_long_column(&b, LongColumnLemma::KOnes).unwrap());
        assert!(verify_long_column(&b, LongColumnLemma::KMinusOneOnes).is_err());
    }

    #[test]
    fn ones_block_is_one() {
        for t in 1..=6 {
            assert_eq!(ones_block_value(t), BigUint::one());
        }
    }
}
