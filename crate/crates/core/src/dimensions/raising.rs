//! Raising operators acting on exponent vectors of complete homogeneous
//! symmetric functions, and the k-Schur dimension they produce.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::KBoundedPartition;
use crate::error::{Error, Result};

/// Exponent vector of `h_v = h_{v_1} h_{v_2} ⋯`. Entries may be negative,
/// in which case `h_v = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `v - min(v)·(1,…,1)`.
    pub fn truncation(&self) -> IntVector {
        let m = self.0.iter().copied().min().unwrap_or(0);
        IntVector(self.0.iter().map(|&x| x - m).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

/// A set of one-based pairs `(i, j)` with `i < j`, standing for
/// `∏ (-R_{ij})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorSet {
    pairs: Vec<(usize, usize)>,
}

impl OperatorSet {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i == 0 || i >= j) {
            return Err(Error::Precondition(format!("operator R_({i},{j}) needs 1 ≤ i < j")));
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("repeated operator in set".into()));
        }
        Ok(OperatorSet { pairs })
    }

    pub fn identity() -> Self {
        OperatorSet { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(-1)^{|X|}`.
    pub fn sign(&self) -> i32 {
        if self.pairs.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn max_index(&self) -> usize {
        self.pairs.iter().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn shifted(&self, offset: usize) -> OperatorSet {
        OperatorSet { pairs: self.pairs.iter().map(|&(i, j)| (i + offset, j + offset)).collect() }
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.pairs.iter().map(|&(i, j)| format!("R{i}{j}")).collect();
        write!(f, "{}", names.join("·"))
    }
}

/// Moves one unit from entry `j` to entry `i` for every `(i, j)` in `ops`.
pub fn raising_apply(ops: &OperatorSet, v: &IntVector) -> Result<IntVector> {
    if ops.max_index() > v.len() {
        return Err(Error::LengthMismatch { expected: ops.max_index(), actual: v.len() });
    }
    let mut out = v.0.clone();
    for &(i, j) in ops.pairs() {
        out[i - 1] += 1;
        out[j - 1] -= 1;
    }
    Ok(IntVector(out))
}

/// Coefficient of `x_1 ⋯ x_n` in `h_v`: a multinomial, or zero when an entry
/// is negative.
pub fn h_coefficient(v: &IntVector) -> BigUint {
    if v.0.iter().any(|&x| x < 0) {
        return BigUint::zero();
    }
    multinomial(v.0.iter().map(|&x| x as u64))
}

/// Fast path for small totals. `None` means the value did not fit.
pub(crate) fn h_coefficient_u128(v: &[i64]) -> Option<u128> {
    if v.iter().any(|&x| x < 0) {
        return Some(0);
    }
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &x in v {
        for j in 1..=x as u128 {
            total += 1;
            acc = acc.checked_mul(total)? / j;
        }
    }
    Some(acc)
}

pub(crate) fn multinomial(entries: impl IntoIterator<Item = u64>) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0u64;
    for x in entries {
        for j in 1..=x {
            total += 1;
            acc *= total;
            acc /= j;
        }
    }
    acc
}

fn binomial(n: i64, r: i64) -> BigUint {
    if r < 0 || n < r {
        return BigUint::zero();
    }
    let r = r.min(n - r) as u64;
    let mut acc = BigUint::one();
    for j in 1..=r {
        acc *= (n as u64) - r + j;
        acc /= j;
    }
    acc
}

/// Evaluates `Σ sign(X) · h_coefficient(R_X v)` over a list of operator sets.
pub fn evaluate(terms: &[OperatorSet], v: &IntVector) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for x in terms {
        let coeff = BigInt::from(h_coefficient(&raising_apply(x, v)?));
        if x.sign() > 0 {
            total += coeff;
        } else {
            total -= coeff;
        }
    }
    Ok(total)
}

/// `evaluate` in machine integers. `None` when a term overflows or an
/// operator index leaves the vector.
pub(crate) fn evaluate_small(terms: &[OperatorSet], v: &[i64]) -> Option<i128> {
    let mut buf = v.to_vec();
    let mut total: i128 = 0;
    for x in terms {
        buf.copy_from_slice(v);
        for &(i, j) in x.pairs() {
            *buf.get_mut(i - 1)? += 1;
            *buf.get_mut(j - 1)? -= 1;
        }
        let c = i128::try_from(h_coefficient_u128(&buf)?).ok()?;
        total = if x.sign() > 0 { total.checked_add(c)? } else { total.checked_sub(c)? };
    }
    Some(total)
}

/// `T_λ = {(i, j) : 1 ≤ i ≤ ℓ(λ), i < j ≤ k - λ_i + i}`.
pub fn operator_index_set(b: &KBoundedPartition) -> Vec<(usize, usize)> {
    let k = b.k() as usize;
    let mut out = Vec::new();
    for (idx, &part) in b.parts().iter().enumerate() {
        let i = idx + 1;
        for j in i + 1..=k - part as usize + i {
            out.push((i, j));
        }
    }
    out
}

/// Largest `|T_λ|` expanded subset-by-subset.
pub const MAX_DIRECT_OPERATORS: usize = 22;

/// `d^{(k)}_λ` from the raising-operator product. Small index sets are
/// expanded over all subsets; larger ones go row by row.
pub fn strong_dim_raising(b: &KBoundedPartition) -> BigUint {
    if operator_index_set(b).len() <= MAX_DIRECT_OPERATORS {
        strong_dim_raising_subsets(b)
    } else {
        strong_dim_raising_rows(b)
    }
}

/// Direct expansion over every subset of `T_λ`, with `λ` padded by zeros up to
/// the largest column index in `T_λ`. Walks subsets in Gray-code order so each
/// step toggles one operator.
pub fn strong_dim_raising_subsets(b: &KBoundedPartition) -> BigUint {
    let ops = operator_index_set(b);
    assert!(ops.len() < 63, "index set too large for subset expansion");
    let width = ops.iter().map(|&(_, j)| j).max().unwrap_or(0).max(b.parts().len());
    let mut v: Vec<i64> = (0..width).map(|i| b.partition().part(i) as i64).collect();
    let mut total = BigInt::zero();
    let mut chosen = vec![false; ops.len()];
    let mut parity = 1i32;
    let count: u64 = 1 << ops.len();
    for step in 0..count {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            let (i, j) = ops[bit];
            let delta = if chosen[bit] { -1 } else { 1 };
            chosen[bit] = !chosen[bit];
            v[i - 1] += delta;
            v[j - 1] -= delta;
            parity = -parity;
        }
        let coeff = match h_coefficient_u128(&v) {
            Some(c) => BigInt::from(c),
            None => BigInt::from(h_coefficient(&IntVector(v.clone()))),
        };
        if parity > 0 {
            total += coeff;
        } else {
            total -= coeff;
        }
    }
    to_unsigned(total, b)
}

/// Row-by-row expansion. Row `i` only raises entry `i`, and every operator
/// lowering entry `i` belongs to an earlier row, so once row `i` has been
/// applied entry `i` is final and can be folded into the coefficient as a
/// binomial factor. The live state is the vector of remaining entries.
/// Operators reaching past `ℓ(λ)` lower a zero entry that nothing raises
/// again, so they are skipped.
pub fn strong_dim_raising_rows(b: &KBoundedPartition) -> BigUint {
    let k = b.k() as i64;
    let parts: Vec<i64> = b.parts().iter().map(|&p| p as i64).collect();
    let len = parts.len();
    let mut states: HashMap<Vec<i64>, BigInt> = HashMap::new();
    states.insert(parts.clone(), BigInt::one());
    for i in 0..len {
        let last = ((i as i64) + k - parts[i]).min(len as i64 - 1);
        for j in (i + 1)..=last as usize {
            let mut next: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(states.len() * 2);
            for (vec, w) in states.drain() {
                let mut moved = vec.clone();
                moved[0] += 1;
                moved[j - i] -= 1;
                *next.entry(moved).or_insert_with(BigInt::zero) -= &w;
                *next.entry(vec).or_insert_with(BigInt::zero) += w;
            }
            next.retain(|_, w| !w.is_zero());
            states = next;
        }
        let mut folded: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(states.len());
        for (vec, w) in states.drain() {
            let head = vec[0];
            let rest: i64 = vec.iter().sum();
            let c = binomial(rest, head);
            if c.is_zero() {
                continue;
            }
            *folded.entry(vec[1..].to_vec()).or_insert_with(BigInt::zero) += w * BigInt::from(c);
        }
        folded.retain(|_, w| !w.is_zero());
        states = folded;
    }
    let total = states.remove(&Vec::new()).unwrap_or_else(BigInt::zero);
    to_unsigned(total, b)
}

fn to_unsigned(total: BigInt, b: &KBoundedPartition) -> BigUint {
    assert!(!total.is_negative(), "negative dimension {total} for {b}");
    total.to_biguint().expect("non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(parts: &[u32], k: u32) -> KBoundedPartition {
        KBoundedPartition::from_parts(parts, k).unwrap()
    }

    fn ops(pairs: &[(usize, usize)]) -> OperatorSet {
        OperatorSet::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(raising_apply(&ops(&[(1, 2)]), &vec![1, 1].into()).unwrap(), vec![2, 0].into());
        assert_eq!(
            raising_apply(&ops(&[(1, 2), (1, 3)]), &vec![2, 1, 1].into()).unwrap(),
            vec![4, 0, 0].into()
        );
        assert_eq!(raising_apply(&OperatorSet::identity(), &vec![3, 1].into()).unwrap(), vec![3, 1].into());
        assert!(raising_apply(&ops(&[(1, 3)]), &vec![1, 1].into()).is_err());
    }

    #[test]
    fn operator_set_validation() {
        assert!(OperatorSet::new(vec![(2, 1)]).is_err());
        assert!(OperatorSet::new(vec![(0, 1)]).is_err());
        assert!(OperatorSet::new(vec![(1, 2), (1, 2)]).is_err());
        assert_eq!(ops(&[(1, 2), (1, 3)]).sign(), 1);
        assert_eq!(ops(&[(2, 3)]).sign(), -1);
    }

    #[test]
    fn h_coefficients() {
        assert_eq!(h_coefficient(&vec![2, 1, 1].into()), 12u32.into());
        assert_eq!(h_coefficient(&vec![2, 2].into()), 6u32.into());
        assert_eq!(h_coefficient(&vec![3, -1, 2].into()), BigUint::zero());
        assert_eq!(h_coefficient(&vec![7].into()), BigUint::one());
        assert_eq!(h_coefficient_u128(&[2, 1, 1]), Some(12));
    }

    #[test]
    fn index_set_for_two_one_one() {
        assert_eq!(operator_index_set(&b(&[2, 1, 1], 3)), vec![(1, 2), (2, 3), (2, 4), (3, 4), (3, 5)]);
    }

    #[test]
    fn raising_dimensions() {
        assert_eq!(strong_dim_raising(&b(&[2, 1, 1], 3)), 6u32.into());
        assert_eq!(strong_dim_raising(&b(&[2, 1], 3)), 2u32.into());
        assert_eq!(strong_dim_raising(&b(&[2, 2], 3)), 2u32.into());
        assert_eq!(strong_dim_raising(&KBoundedPartition::empty(3)), BigUint::one());
    }

    #[test]
    fn both_raising_paths_agree() {
        for k in 1..=4 {
            for n in 0..=8 {
                for p in crate::posets::enumerate_bounded(k, n) {
                    assert_eq!(strong_dim_raising_subsets(&p), strong_dim_raising_rows(&p), "k={k} {p}");
                }
            }
        }
    }

    #[test]
    fn evaluate_matches_hand_expansion() {
        // (1 - R12)(1 - R23) on (2,1,1) including the cancelling pair.
        let terms = vec![OperatorSet::identity(), ops(&[(1, 2)]), ops(&[(2, 3)]), ops(&[(1, 2), (2, 3)])];
        assert_eq!(evaluate(&terms, &vec![2, 1, 1].into()).unwrap(), BigInt::from(6));
    }
}
