//! Claims about the finite chain, checked in exact arithmetic.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{format_rational, ChainAnalysis, RationalTransitionMatrix};
use crate::combinatorics::{complement, factorial_index, k_conjugate, reduce, ReducedState};
use crate::report::{ClaimKind, Finding};
use crate::tasep::alpha_inv;

/// `M_k = ∏_{j=1}^k C(2j, j)`.
pub fn m_k(k: u32) -> BigUint {
    (1..=k as u64).map(|j| binomial(BigUint::from(2 * j), BigUint::from(j))).product()
}

/// Conjectured minimum `(k+1) ∏_{j=1}^k C(k, j) / M_k`.
pub fn conjectured_minimum(k: u32) -> BigRational {
    let prod: BigUint = (1..=k as u64).map(|j| binomial(BigUint::from(k), BigUint::from(j))).product();
    BigRational::new(BigInt::from(prod * BigUint::from(k + 1)), BigInt::from(m_k(k)))
}

/// Every row sums to exactly one, i.e. `Σ_Λ d_Λ = (|λ|+1) d_λ` over weak
/// covers.
pub fn verify_pieri(m: &RationalTransitionMatrix) -> Finding {
    const CLAIM: &str = "Pieri row sums";
    let witness = (0..m.len())
        .find(|&i| !m.row_sum(i).is_one())
        .map(|i| format!("row {} sums to {}", m.states[i], format_rational(&m.row_sum(i))));
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(m.k), format!("{} rows", m.len()), witness)
}

pub fn verify_stationary(a: &ChainAnalysis) -> Finding {
    let ok = super::is_stationary(&a.matrix, &a.pi);
    Finding::from_witness(
        "πP = π exactly with Σπ = 1",
        ClaimKind::Property,
        Some(a.k()),
        format!("lcd {}", a.pi.lcd()),
        (!ok).then(|| "stationarity check failed".to_string()),
    )
}

/// Strong connectivity of the transition digraph.
pub fn verify_irreducible(m: &RationalTransitionMatrix) -> Finding {
    let n = m.len();
    let mut fwd = vec![Vec::new(); n];
    let mut back = vec![Vec::new(); n];
    for (from, row) in m.rows.iter().enumerate() {
        for t in row {
            fwd[from].push(t.to);
            back[t.to].push(from);
        }
    }
    let reach = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    };
    let (f, b) = (reach(&fwd), reach(&back));
    let witness = (0..n).find(|&i| !f[i] || !b[i]).map(|i| format!("state {} not strongly connected to ∅", m.states[i]));
    Finding::from_witness("irreducibility", ClaimKind::Property, Some(m.k), format!("{n} states"), witness)
}

/// `ω_k` restricted to reduced states.
pub fn k_conjugate_state(s: &ReducedState) -> ReducedState {
    let (r, ledger) = reduce(&k_conjugate(s.bounded()));
    debug_assert_eq!(ledger.area(), 0);
    r
}

fn row_map(m: &RationalTransitionMatrix, from: usize) -> BTreeMap<usize, BigRational> {
    let mut out = BTreeMap::new();
    for t in &m.rows[from] {
        *out.entry(t.to).or_insert_with(BigRational::zero) += &t.prob;
    }
    out
}

/// `P(λ, μ) = P(λ^ω, μ^ω)` entrywise and `π(λ) = π(λ^ω)`.
pub fn verify_conjugation_symmetry(a: &ChainAnalysis) -> Finding {
    const CLAIM: &str = "conjugation symmetry of P and π";
    let m = &a.matrix;
    let omega: Vec<usize> = m.states.iter().map(|s| factorial_index(&k_conjugate_state(s))).collect();
    let mut witness = None;
    for i in 0..m.len() {
        if k_conjugate(m.states[i].bounded()) != *m.states[omega[i]].bounded() {
            witness = Some(format!("{} leaves the reduced states under conjugation", m.states[i]));
            break;
        }
        let mapped: BTreeMap<usize, BigRational> = row_map(m, i).into_iter().map(|(to, p)| (omega[to], p)).collect();
        if mapped != row_map(m, omega[i]) {
            witness = Some(format!("rows of {} and {} differ", m.states[i], m.states[omega[i]]));
            break;
        }
        if a.pi.values[i] != a.pi.values[omega[i]] {
            witness = Some(format!("π({}) ≠ π({})", m.states[i], m.states[omega[i]]));
            break;
        }
    }
    let fixed = (0..m.len()).filter(|&i| omega[i] == i).count();
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(a.k()), format!("{fixed} self-conjugate states"), witness)
}

/// `π(λ) = π(λ^comp)`.
pub fn verify_complement(a: &ChainAnalysis) -> Finding {
    const CLAIM: &str = "symmetry of complements";
    let m = &a.matrix;
    let witness = m.states.iter().find_map(|s| {
        let c = complement(s);
        let (p, q) = (a.pi.get(s), a.pi.get(&c));
        (p != q).then(|| format!("π({s}) = {} but π({c}) = {}", format_rational(p), format_rational(q)))
    });
    Finding::from_witness(CLAIM, ClaimKind::Conjecture, Some(a.k()), format!("{} pairs", m.len() / 2), witness)
}

/// `A_λ = π(λ) · M_k`, integral when the conjecture holds.
pub fn a_table(a: &ChainAnalysis) -> Vec<(ReducedState, BigRational)> {
    let mk = BigRational::from_integer(BigInt::from(m_k(a.k())));
    a.matrix.states.iter().zip(&a.pi.values).map(|(s, p)| (s.clone(), p * &mk)).collect()
}

/// `lcd(π) | M_k` and every `π(λ) M_k` is an integer.
pub fn verify_lcd_and_mk(a: &ChainAnalysis) -> Finding {
    const CLAIM: &str = "π(λ) = A_λ / M_k";
    let lcd = a.pi.lcd();
    let mk = m_k(a.k());
    let witness = if !(&mk % &lcd).is_zero() {
        Some(format!("lcd {lcd} does not divide M_k = {mk}"))
    } else {
        a_table(a).into_iter().find(|(_, v)| !v.is_integer()).map(|(s, v)| format!("A_{s} = {}", format_rational(&v)))
    };
    Finding::from_witness(CLAIM, ClaimKind::Conjecture, Some(a.k()), format!("lcd {lcd}, M_k {mk}"), witness)
}

/// Minimum value, its multiplicity, and the two candidate descriptions of the
/// minimizers: `l_i ∈ {0, i-1}` as printed and `l_i ∈ {0, k-i}`.
pub fn verify_minimum(a: &ChainAnalysis) -> Vec<Finding> {
    let k = a.k();
    let min = a.pi.min().clone();
    let want = conjectured_minimum(k);
    let minimizers: Vec<&ReducedState> =
        a.matrix.states.iter().zip(&a.pi.values).filter(|(_, v)| **v == min).map(|(s, _)| s).collect();
    let mut out = vec![Finding::from_witness(
        "minimum is (k+1)∏C(k,j)/M_k",
        ClaimKind::Conjecture,
        Some(k),
        format!("min π = {}", format_rational(&min)),
        (min != want).then(|| format!("formula gives {}", format_rational(&want))),
    )];
    let expected = 1usize << (k - 1);
    out.push(Finding::from_witness(
        "minimum attained 2^(k-1) times",
        ClaimKind::Conjecture,
        Some(k),
        format!("{} minimizers", minimizers.len()),
        (minimizers.len() != expected).then(|| format!("expected {expected}")),
    ));
    let readings: [(&str, fn(u32, u32) -> u32); 2] = [
        ("minimizers have each l_i ∈ {0, i-1}", |i, _| i - 1),
        ("minimizers have each l_i ∈ {0, k-i}", |i, k| k - i),
    ];
    for (claim, other) in readings {
        let matches = |s: &ReducedState| (1..=k).all(|i| s.l(i) == 0 || s.l(i) == other(i, k));
        let described: Vec<&ReducedState> = a.matrix.states.iter().filter(|s| matches(s)).collect();
        let witness = minimizers
            .iter()
            .find(|s| !matches(s))
            .map(|s| format!("minimizer {s} is not described"))
            .or_else(|| {
                described.iter().find(|s| a.pi.get(s) != &min).map(|s| format!("{s} is described but not minimal"))
            });
        out.push(Finding::from_witness(claim, ClaimKind::Conjecture, Some(k), format!("{} described", described.len()), witness));
    }
    out
}

/// Adding a box in column 1 to a state with `k - 1` ones has rate `1/k`.
pub fn verify_rate_one_over_k(a: &ChainAnalysis) -> Finding {
    const CLAIM: &str = "rate 1/k for clearing the column of ones";
    let k = a.k();
    let m = &a.matrix;
    let want = BigRational::new(BigInt::one(), BigInt::from(k));
    let mut checked = 0;
    let mut witness = None;
    for (i, s) in m.states.iter().enumerate() {
        if s.l(1) != k - 1 {
            continue;
        }
        checked += 1;
        let Some(t) = m.by_column(i, 1) else {
            witness = Some(format!("{s} has no column-1 move"));
            break;
        };
        let mut l = s.multiplicities().to_vec();
        l[0] = 0;
        let target = factorial_index(&ReducedState::from_multiplicities(&l, k).expect("smaller multiplicities"));
        if t.prob != want || t.to != target || t.rectangle != Some(1) {
            witness = Some(format!("{s}: rate {} to {}", format_rational(&t.prob), m.states[t.to]));
            break;
        }
    }
    Finding::from_witness(CLAIM, ClaimKind::Theorem, Some(k), format!("{checked} states"), witness)
}

/// `P(k at position j of α⁻¹(λ)) = P(l_1(λ) = j - 1)` for every `j`.
pub fn verify_position_of_k(a: &ChainAnalysis) -> Finding {
    const CLAIM: &str = "position of k matches number of ones";
    let k = a.k();
    let mut by_position = vec![BigRational::zero(); k as usize];
    let mut by_ones = vec![BigRational::zero(); k as usize];
    for (s, p) in a.matrix.states.iter().zip(&a.pi.values) {
        by_position[alpha_inv(s).position(k) - 1] += p;
        by_ones[s.l(1) as usize] += p;
    }
    let witness = (0..k as usize).find(|&j| by_position[j] != by_ones[j]).map(|j| {
        format!("j={}: {} vs {}", j + 1, format_rational(&by_position[j]), format_rational(&by_ones[j]))
    });
    let detail = by_position.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    Finding::from_witness(CLAIM, ClaimKind::Conjecture, Some(k), detail, witness)
}

pub fn verify_rho_symmetry(a: &ChainAnalysis) -> Finding {
    let k = a.k() as usize;
    let rho = a.rho();
    let witness = (0..k).find(|&i| rho[i] != rho[k - 1 - i]).map(|i| format!("ρ_{} ≠ ρ_{}", i + 1, k - i));
    Finding::from_witness("ρ_i = ρ_(k+1-i)", ClaimKind::Theorem, Some(a.k()), rho_detail(&rho), witness)
}

/// `ρ_i = 1 / C(k+2, 3)` for every `i`.
pub fn verify_rho_conjecture(a: &ChainAnalysis) -> Finding {
    let k = a.k() as u64;
    let want = BigRational::new(BigInt::one(), BigInt::from((k + 2) * (k + 1) * k / 6));
    let rho = a.rho();
    let witness = rho.iter().position(|r| *r != want).map(|i| format!("ρ_{} = {}", i + 1, format_rational(&rho[i])));
    Finding::from_witness("ρ_i = 1/C(k+2,3)", ClaimKind::Conjecture, Some(a.k()), rho_detail(&rho), witness)
}

fn rho_detail(rho: &[BigRational]) -> String {
    rho.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

/// Boxes are conserved: `Σ ρ_i i(k+1-i) = 1 - E_π[Δ|λ|]`, and the stationary
/// mean growth vanishes, so the area removed per step is exactly one.
pub fn verify_flow_conservation(a: &ChainAnalysis) -> Finding {
    let k = a.k();
    let m = &a.matrix;
    let removed = a
        .rho()
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (i, r)| acc + r * BigRational::from_integer(((i as i64 + 1) * (k as i64 - i as i64)).into()));
    let mut growth = BigRational::zero();
    for (from, row) in m.rows.iter().enumerate() {
        let size = m.states[from].size() as i64;
        for t in row {
            let delta = BigRational::from_integer((m.states[t.to].size() as i64 - size).into());
            growth += &a.pi.values[from] * &t.prob * delta;
        }
    }
    let one = BigRational::one();
    let witness = if &removed + &growth != one {
        Some(format!("removed {} + growth {} ≠ 1", format_rational(&removed), format_rational(&growth)))
    } else if removed != one {
        Some(format!("removed area per step {}", format_rational(&removed)))
    } else {
        None
    };
    Finding::from_witness("box flow conservation", ClaimKind::Property, Some(k), "Σ ρ_i·i(k+1-i) = 1", witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::KBoundedPartition;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn m_k_values() {
        assert_eq!(m_k(3), BigUint::from(240u32));
        assert_eq!(m_k(4), BigUint::from(16800u32));
        assert_eq!(conjectured_minimum(3), q(3, 20));
        assert_eq!(conjectured_minimum(4), q(1, 35));
    }

    #[test]
    fn three_chain_findings() {
        let a = ChainAnalysis::shared(3).unwrap();
        assert!(verify_pieri(&a.matrix).passed());
        assert!(verify_stationary(&a).passed());
        assert!(verify_irreducible(&a.matrix).passed());
        assert!(verify_conjugation_symmetry(&a).passed());
        assert!(verify_complement(&a).passed());
        assert!(verify_lcd_and_mk(&a).passed());
        assert!(verify_rate_one_over_k(&a).passed());
        assert!(verify_position_of_k(&a).passed());
        assert!(verify_rho_symmetry(&a).passed());
        assert!(verify_rho_conjecture(&a).passed());
        assert!(verify_flow_conservation(&a).passed());
        assert_eq!(a.rho(), vec![q(1, 10); 3]);
        let min = verify_minimum(&a);
        assert!(min[0].passed() && min[1].passed());
        assert!(!min[2].passed());
        assert!(min[3].passed());
    }

    #[test]
    fn conjugate_states_stay_reduced() {
        for k in 2..=5 {
            for s in crate::combinatorics::enumerate_reduced_states(k) {
                assert_eq!(reduce(&k_conjugate(s.bounded())).1.area(), 0, "k={k} {s}");
            }
        }
        let s = ReducedState::new(KBoundedPartition::from_parts(&[1, 1], 3).unwrap()).unwrap();
        assert_eq!(k_conjugate_state(&s).parts(), &[2]);
    }
}
