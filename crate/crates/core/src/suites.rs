//! Grouped checks behind `kcore verify`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::verify::{
    verify_complement, verify_conjugation_symmetry, verify_flow_conservation, verify_irreducible, verify_lcd_and_mk,
    verify_minimum, verify_pieri, verify_position_of_k, verify_rate_one_over_k, verify_rho_conjecture,
    verify_rho_symmetry, verify_stationary,
};
use crate::chain::{verify_normalization, verify_stationarity_identity, ChainAnalysis, RationalTransitionMatrix};
use crate::combinatorics::{enumerate_reduced_states, k_conjugate, rectangle, KBoundedPartition};
use crate::dimensions::{
    composition_sum, evaluate, naive_triangle_expansion, strong_dim, triangle_expand_intervals,
    triangle_expand_intervals_unpruned, triangle_expand_inversions, triangle_vanishes, verify_long_column,
    DimensionEngine, IntVector, LongColumnLemma,
};
use crate::dimensions::appendix::MAX_LONG_COLUMN_OPERATORS;
use crate::error::{Error, Result};
use crate::partition::{hook_length_dimension, Partition};
use crate::posets::{enumerate_bounded, weak_covers_bounded, weak_dim};
use crate::report::{ClaimKind, Finding, Report};
use crate::simulate::verify_projection;
use crate::tasep::{rectangle_jump_witness, verify_tasep_equivalence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorems,
    Conjectures,
    Appendix,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorems" => Ok(Suite::Theorems),
            "conjectures" => Ok(Suite::Conjectures),
            "appendix" => Ok(Suite::Appendix),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}, expected theorems|conjectures|appendix|all"))),
        }
    }
}

/// Largest size for the Plancherel and dimension checks.
pub const PLANCHEREL_N: u64 = 8;
/// Largest size for the one-step invariance check, which enumerates `P_k(n)`.
pub const INVARIANCE_N: u64 = 6;
/// Largest size for the projection check.
pub const PROJECTION_N: u64 = 10;
/// Above this `k` the raising engine is only spot checked.
pub const ENGINE_K: u32 = 5;

pub fn run(suite: Suite, k: u32) -> Result<Report> {
    let mut r = Report::new();
    match suite {
        Suite::Theorems => r.extend(theorem_suite(k)?),
        Suite::Conjectures => r.extend(conjecture_suite(k)?),
        Suite::Appendix => r.extend(appendix_suite()),
        Suite::All => {
            r.extend(theorem_suite(k)?);
            r.extend(conjecture_suite(k)?);
            r.extend(appendix_suite());
        }
    }
    Ok(r)
}

pub fn theorem_suite(k: u32) -> Result<Report> {
    let a = ChainAnalysis::shared(k)?;
    let mut r = chain_checks(&a);
    r.push(verify_tasep_equivalence(k));
    r.push(rectangle_jump_witness(k));
    r.push(verify_projection(&a.matrix, PROJECTION_N));
    for n in 1..=PLANCHEREL_N {
        r.push(verify_normalization(k, n));
    }
    for n in 1..=INVARIANCE_N {
        r.push(verify_stationarity_identity(k, n));
    }
    r.extend(dimension_properties(k, &a.matrix));
    Ok(r)
}

/// Hard checks that only need the solved chain.
pub fn chain_checks(a: &ChainAnalysis) -> Report {
    let mut r = Report::new();
    r.push(verify_pieri(&a.matrix));
    r.push(verify_stationary(a));
    r.push(verify_irreducible(&a.matrix));
    r.push(verify_rate_one_over_k(a));
    r.push(verify_conjugation_symmetry(a));
    r.push(verify_rho_symmetry(a));
    r.push(verify_flow_conservation(a));
    r
}

pub fn conjecture_suite(k: u32) -> Result<Report> {
    Ok(conjectures(&*ChainAnalysis::shared(k)?))
}

pub fn conjectures(a: &ChainAnalysis) -> Report {
    let mut r = Report::new();
    r.push(verify_complement(a));
    r.push(verify_lcd_and_mk(a));
    for f in verify_minimum(a) {
        r.push(f);
    }
    r.push(verify_position_of_k(a));
    r.push(verify_rho_conjecture(a));
    r
}

/// Engine equivalence, conjugation invariance, the sandwich inequality and
/// rectangle factorization.
pub fn dimension_properties(k: u32, m: &RationalTransitionMatrix) -> Report {
    let mut r = Report::new();
    r.push(engine_equivalence(k, m));
    r.push(conjugation_invariance(k));
    r.push(sandwich(k));
    if k <= 4 {
        r.push(rectangle_factorization(k, m));
    }
    r
}

fn engine_equivalence(k: u32, m: &RationalTransitionMatrix) -> Finding {
    const CLAIM: &str = "raising-operator and tableau dimensions agree";
    let mut seen = BTreeSet::new();
    let mut shapes = Vec::new();
    for s in &m.states {
        let b = s.bounded().clone();
        let covers = if k <= ENGINE_K { weak_covers_bounded(&b) } else { Vec::new() };
        for c in std::iter::once(b).chain(covers) {
            if seen.insert(c.partition().clone()) {
                shapes.push(c);
            }
        }
    }
    if k > ENGINE_K {
        // a spread of states, extremes included
        let step = (shapes.len() / 12).max(1);
        shapes = shapes.into_iter().step_by(step).collect();
    }
    let witness = shapes.iter().find_map(|b| {
        let (t, ra) = (strong_dim(b, DimensionEngine::Tableaux), strong_dim(b, DimensionEngine::Raising));
        (t != ra).then(|| format!("{b}: tableaux {t}, raising {ra}"))
    });
    Finding::from_witness(CLAIM, ClaimKind::Property, Some(k), format!("{} shapes", shapes.len()), witness)
}

fn bounded_up_to(k: u32, n_max: u64) -> impl Iterator<Item = KBoundedPartition> {
    (0..=n_max).flat_map(move |n| enumerate_bounded(k, n))
}

fn conjugation_invariance(k: u32) -> Finding {
    let mut checked = 0;
    let witness = bounded_up_to(k, PLANCHEREL_N).find_map(|b| {
        checked += 1;
        let c = k_conjugate(&b);
        let (d, dc) = (strong_dim(&b, DimensionEngine::Tableaux), strong_dim(&c, DimensionEngine::Tableaux));
        (d != dc).then(|| format!("d{b} = {d}, d{c} = {dc}"))
    });
    Finding::from_witness("d_λ = d_(λ^ω)", ClaimKind::Theorem, Some(k), format!("{checked} partitions"), witness)
}

fn sandwich(k: u32) -> Finding {
    let mut checked = 0;
    let witness = bounded_up_to(k, PLANCHEREL_N).find_map(|b| {
        checked += 1;
        let w = weak_dim(&b);
        let d = hook_length_dimension(b.partition());
        let dk = strong_dim(&b, DimensionEngine::Tableaux);
        let ordered = w <= d && d <= dk;
        let equal_when_large = b.size() > k as u64 || (w == d && d == dk);
        (!(ordered && equal_when_large)).then(|| format!("{b}: w={w}, d={d}, d^(k)={dk}"))
    });
    Finding::from_witness("w_λ ≤ d_λ ≤ d^(k)_λ", ClaimKind::Theorem, Some(k), format!("{checked} partitions"), witness)
}

fn binomial(n: u64, r: u64) -> BigUint {
    (1..=r).fold(BigUint::one(), |acc, j| acc * (n - r + j) / j)
}

fn rectangle_factorization(k: u32, m: &RationalTransitionMatrix) -> Finding {
    const CLAIM: &str = "d(λ ∪ □_i) = C(n+|□_i|, |□_i|) d(□_i) d(λ)";
    let mut checked = 0;
    let mut witness = None;
    'outer: for s in &m.states {
        let b = s.bounded();
        let d = strong_dim(b, DimensionEngine::Tableaux);
        for i in 1..=k {
            checked += 1;
            let rect = rectangle(i, k);
            let joined = Partition::from_unsorted(b.parts().iter().chain(rect.parts()).copied().collect());
            let big = KBoundedPartition::new(joined, k).expect("union of k-bounded partitions");
            let got = strong_dim(&big, DimensionEngine::Tableaux);
            let want = binomial(b.size() + rect.size(), rect.size()) * hook_length_dimension(&rect) * &d;
            if got != want {
                witness = Some(format!("{b} ∪ □_{i}: {got} vs {want}"));
                break 'outer;
            }
        }
    }
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(k), format!("{checked} products"), witness)
}

/// Largest `m` for the composition identity.
pub const COMPOSITION_M: u32 = 12;
/// Random vectors per triangle size in the inversion check.
pub const RANDOM_VECTORS: usize = 100;
/// Largest triangle size for the inversion and vanishing checks.
pub const TRIANGLE_T: usize = 5;
/// Largest arity for the interval expansion.
pub const INTERVAL_K: usize = 8;
/// Largest `k` for the long-column checks.
pub const LONG_COLUMN_K: u32 = 4;
/// Largest size of extra partitions with `k` ones.
pub const LONG_COLUMN_N: u64 = 10;
/// Seed for the random vectors.
pub const APPENDIX_SEED: u64 = 20_240_611;

/// Identities behind the triangle expansions. None of them depend on the
/// chain's `k`; the long-column lemmas run for every `k ≤ 4`.
pub fn appendix_suite() -> Report {
    let mut r = Report::new();
    r.push(composition_identity());
    r.push(inversions_match_naive());
    r.push(intervals_on_ones());
    r.push(vanishing_lemmas());
    for kk in 2..=LONG_COLUMN_K {
        r.push(long_column(kk, LongColumnLemma::KMinusOneOnes));
        r.push(long_column(kk, LongColumnLemma::KOnes));
    }
    r
}

fn factorial(m: u32) -> BigInt {
    (1..=m as u64).fold(BigInt::one(), |acc, i| acc * i)
}

fn composition_identity() -> Finding {
    let witness = (1..=COMPOSITION_M).find_map(|m| {
        let got = composition_sum(m);
        (got != BigRational::new(BigInt::one(), factorial(m))).then(|| format!("m={m}: {got}"))
    });
    Finding::from_witness(
        "Σ over compositions (-1)^(m-t)/(c_1!⋯c_t!) = 1/m!",
        ClaimKind::Theorem,
        None,
        format!("m ≤ {COMPOSITION_M}"),
        witness,
    )
}

fn inversions_match_naive() -> Finding {
    let mut rng = ChaCha8Rng::seed_from_u64(APPENDIX_SEED);
    let mut witness = None;
    'outer: for t in 1..=TRIANGLE_T {
        let (inv, naive) = (triangle_expand_inversions(t), naive_triangle_expansion(t));
        for _ in 0..RANDOM_VECTORS {
            let v = IntVector((0..t).map(|_| rng.gen_range(0..=6)).collect());
            let (a, b) = (evaluate(&inv, &v).expect("in range"), evaluate(&naive, &v).expect("in range"));
            if a != b {
                witness = Some(format!("t={t}, v={:?}: {a} vs {b}", v.0));
                break 'outer;
            }
        }
    }
    Finding::from_witness(
        "inversion expansion equals the full product",
        ClaimKind::Theorem,
        None,
        format!("{RANDOM_VECTORS} vectors for each t ≤ {TRIANGLE_T}"),
        witness,
    )
}

fn intervals_on_ones() -> Finding {
    let witness = (2..=INTERVAL_K).find_map(|k| {
        let ones = IntVector(vec![1; k]);
        let mut padded = ones.clone();
        padded.0.push(0);
        let inv = evaluate(&triangle_expand_inversions(k), &ones).expect("in range");
        let int = evaluate(&triangle_expand_intervals(k), &ones).expect("in range");
        let raw = evaluate(&triangle_expand_intervals_unpruned(k), &padded).expect("in range");
        (inv != int || int != raw || !inv.is_one()).then(|| format!("k={k}: inversions {inv}, intervals {int}, raw {raw}"))
    });
    Finding::from_witness(
        "interval expansion agrees on the ones vector",
        ClaimKind::Theorem,
        None,
        format!("k ≤ {INTERVAL_K}"),
        witness,
    )
}

/// `(0, …, 0, m)` with `1 ≤ m ≤ t`.
fn single_tail(hat: &[i64], t: usize) -> bool {
    let (last, rest) = hat.split_last().expect("non-empty");
    rest.iter().all(|&x| x == 0) && (1..=t as i64).contains(last)
}

/// Non-zero with `μ̂_i ≤ i - 1`.
fn under_staircase(hat: &[i64]) -> bool {
    hat.iter().any(|&x| x != 0) && hat.iter().enumerate().all(|(i, &x)| x <= i as i64)
}

fn vanishing_lemmas() -> Finding {
    let mut checked = 0;
    let mut witness = None;
    'outer: for t in 1..=TRIANGLE_T {
        let len = t + 1;
        for code in 0..5usize.pow(len as u32) {
            let mu: Vec<i64> = (0..len).map(|i| (code / 5usize.pow(i as u32) % 5) as i64).collect();
            let min = *mu.iter().min().expect("non-empty");
            let hat: Vec<i64> = mu.iter().map(|x| x - min).collect();
            if !(single_tail(&hat, t) || under_staircase(&hat)) {
                continue;
            }
            checked += 1;
            if !triangle_vanishes(&IntVector(mu.clone()), t).expect("length t + 1") {
                witness = Some(format!("t={t}, μ={mu:?}"));
                break 'outer;
            }
        }
    }
    Finding::from_witness(
        "triangle vanishes on staircase truncations",
        ClaimKind::Theorem,
        None,
        format!("{checked} vectors, entries ≤ 4, t ≤ {TRIANGLE_T}"),
        witness,
    )
}

fn long_column(k: u32, lemma: LongColumnLemma) -> Finding {
    let (claim, candidates): (&str, Vec<KBoundedPartition>) = match lemma {
        LongColumnLemma::KMinusOneOnes => (
            "triangle kills moves out of k-1 ones",
            enumerate_reduced_states(k)
                .into_iter()
                .map(|s| s.bounded().clone())
                .filter(|b| b.multiplicities()[0] == k - 1)
                .collect(),
        ),
        LongColumnLemma::KOnes => {
            let mut v: Vec<KBoundedPartition> = enumerate_reduced_states(k)
                .into_iter()
                .filter(|s| s.l(1) == k - 1)
                .map(|s| {
                    let mut parts = s.parts().to_vec();
                    parts.push(1);
                    KBoundedPartition::from_parts(&parts, k).expect("one more part equal to 1")
                })
                .collect();
            v.extend(bounded_up_to(k, LONG_COLUMN_N).filter(|b| b.multiplicities()[0] == k));
            v.sort_by(|a, b| a.parts().cmp(b.parts()));
            v.dedup();
            ("triangle kills moves out of k ones", v)
        }
    };
    let mut checked = 0;
    let mut skipped = 0;
    let mut witness = None;
    for b in &candidates {
        match verify_long_column(b, lemma) {
            Ok(true) => checked += 1,
            Ok(false) => {
                witness = Some(b.to_string());
                break;
            }
            Err(_) => skipped += 1,
        }
    }
    let detail = format!("{checked} partitions, {skipped} with more than {MAX_LONG_COLUMN_OPERATORS} operators skipped");
    Finding::from_witness(claim, ClaimKind::Theorem, Some(k), detail, witness)
}
