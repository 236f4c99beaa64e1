use kcore::chain::verify::{k_conjugate_state, m_k};
use kcore::chain::{ChainAnalysis, SolveMethod};
use kcore::dimensions::{
    composition_sum, h_coefficient, raising_apply, strong_dim, strong_dim_raising, strong_dim_tableaux,
    triangle_expand_intervals, triangle_expand_inversions, triangle_vanishes, verify_long_column, DimensionEngine,
    IntVector, LongColumnLemma, OperatorSet,
};
use kcore::partition::hook_length_dimension;
use kcore::posets::{enumerate_bounded, strong_covers, weak_covers_bounded, weak_covers_core, weak_dim};
use kcore::simulate::{boundary, reconstruct_core, SimState, Simulator, TransitionTable};
use kcore::tasep::{alpha, alpha_inv, jumps, CyclicState};
use kcore::{
    bounded_to_core, complement, core_to_bounded, enumerate_reduced_states, factorial_index, k_conjugate, reduce,
    CorePartition, KBoundedPartition, Partition, RectangleLedger, ReducedState,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn b(parts: &[u32], k: u32) -> KBoundedPartition {
    KBoundedPartition::from_parts(parts, k).unwrap()
}

fn core(parts: &[u32], r: u32) -> CorePartition {
    CorePartition::new(p(parts), r).unwrap()
}

fn state(parts: &[u32], k: u32) -> ReducedState {
    ReducedState::new(b(parts, k)).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn parts_of(v: &[KBoundedPartition]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = v.iter().map(|x| x.parts().to_vec()).collect();
    out.sort();
    out
}

#[test]
fn hook_lengths_small_and_figure_core() {
    assert_eq!(p(&[2, 1]).hook_lengths(), vec![vec![3, 1], vec![1]]);
    assert!(Partition::empty().hook_lengths().is_empty());
    let hooks = p(&[12, 8, 5, 5, 2, 2, 1]).hook_lengths();
    assert_eq!(&hooks[0][..5], &[18, 16, 13, 12, 11]);
}

#[test]
fn core_membership() {
    assert!(p(&[7, 3, 1]).is_core(5));
    assert!(!p(&[3, 1]).is_core(4));
    assert!(Partition::empty().is_core(2));
    assert!(Partition::empty().is_core(7));
}

#[test]
fn core_bounded_bijection_examples() {
    let big = core(&[12, 8, 5, 5, 2, 2, 1], 5);
    assert_eq!(core_to_bounded(&big).parts(), &[4, 3, 3, 3, 2, 2, 1]);
    assert_eq!(core_to_bounded(&core(&[7, 3, 1], 5)).parts(), &[4, 3, 1]);
    assert!(core_to_bounded(&CorePartition::empty(5)).parts().is_empty());
    assert_eq!(bounded_to_core(&b(&[4, 3, 3, 3, 2, 2, 1], 4)).parts(), &[12, 8, 5, 5, 2, 2, 1]);
    assert_eq!(bounded_to_core(&b(&[4, 3, 1], 4)).parts(), &[7, 3, 1]);
    for m in 1..=4 {
        assert_eq!(bounded_to_core(&b(&[m], 4)).parts(), &[m]);
    }
}

#[test]
fn k_conjugation_examples() {
    for parts in [&[2, 1][..], &[1], &[2, 1, 1]] {
        assert_eq!(k_conjugate(&b(parts, 3)).parts(), parts);
    }
    assert_eq!(k_conjugate(&b(&[2], 3)).parts(), &[1, 1]);
}

#[test]
fn reduction_examples() {
    let (r, c) = reduce(&b(&[4, 3, 1], 4));
    assert_eq!(r.parts(), &[3, 1]);
    assert_eq!(c.counts, vec![0, 0, 0, 1]);
    let (r, c) = reduce(&b(&[2, 2, 1], 3));
    assert_eq!(r.parts(), &[1]);
    assert_eq!(c.counts, vec![0, 1, 0]);
    let (r, c) = reduce(&KBoundedPartition::empty(3));
    assert!(r.parts().is_empty());
    assert_eq!(c, RectangleLedger::zero(3));
}

#[test]
fn complement_examples() {
    assert_eq!(complement(&ReducedState::empty(4)).parts(), &[3, 2, 2, 1, 1, 1]);
    assert_eq!(complement(&state(&[2, 1], 4)).parts(), &[3, 2, 1, 1]);
    for s in enumerate_reduced_states(4) {
        assert_eq!(complement(&complement(&s)), s);
    }
}

#[test]
fn reduced_state_enumeration_and_index() {
    let three: Vec<Vec<u32>> = enumerate_reduced_states(3).iter().map(|s| s.parts().to_vec()).collect();
    let mut sorted = three.clone();
    sorted.sort();
    assert_eq!(sorted, vec![vec![], vec![1], vec![1, 1], vec![2], vec![2, 1], vec![2, 1, 1]]);
    assert_eq!(enumerate_reduced_states(1).len(), 1);
    assert_eq!(enumerate_reduced_states(4).len(), 24);
    assert_eq!(factorial_index(&ReducedState::empty(3)), 0);
    assert_eq!(factorial_index(&state(&[2, 1, 1], 3)), 5);
    assert_eq!(factorial_index(&state(&[1], 4)), 6);
    for (i, s) in enumerate_reduced_states(5).iter().enumerate() {
        assert_eq!(factorial_index(s), i);
    }
}

#[test]
fn weak_cover_examples() {
    let mut cores: Vec<Vec<u32>> = weak_covers_core(&core(&[2, 1], 4)).into_iter().map(|(_, c)| c.parts().to_vec()).collect();
    cores.sort();
    assert_eq!(cores, vec![vec![2, 2], vec![3, 1, 1]]);
    let from_empty = weak_covers_core(&CorePartition::empty(4));
    assert_eq!(from_empty.len(), 1);
    assert_eq!(from_empty[0].1.parts(), &[1]);
    assert_eq!(parts_of(&weak_covers_bounded(&b(&[2, 1], 3))), vec![vec![2, 1, 1], vec![2, 2]]);
    assert_eq!(parts_of(&weak_covers_bounded(&b(&[1], 3))), vec![vec![1, 1], vec![2]]);
    assert_eq!(parts_of(&weak_covers_bounded(&KBoundedPartition::empty(3))), vec![vec![1]]);
}

#[test]
fn weak_covers_are_strong_covers() {
    for n in 0..=6 {
        for x in enumerate_bounded(3, n) {
            let c = bounded_to_core(&x);
            let strong: Vec<CorePartition> = strong_covers(&c).into_iter().map(|s| s.to).collect();
            for (_, w) in weak_covers_core(&c) {
                assert!(strong.contains(&w), "{c} → {w}");
            }
        }
    }
    let from_empty = strong_covers(&CorePartition::empty(4));
    assert_eq!(from_empty.len(), 1);
    assert_eq!(from_empty[0].components, 1);
}

#[test]
fn weak_dimension_examples() {
    assert_eq!(weak_dim(&KBoundedPartition::empty(3)), BigUint::from(1u32));
    assert_eq!(weak_dim(&b(&[1], 3)), BigUint::from(1u32));
    for x in enumerate_bounded(6, 6) {
        assert_eq!(weak_dim(&x), hook_length_dimension(x.partition()));
    }
    let total: BigUint =
        enumerate_bounded(3, 4).iter().map(|x| weak_dim(x) * strong_dim(x, DimensionEngine::Tableaux)).sum();
    assert_eq!(total, BigUint::from(24u32));
}

#[test]
fn bounded_enumeration_examples() {
    assert_eq!(parts_of(&enumerate_bounded(3, 4)), vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1]]);
    assert_eq!(parts_of(&enumerate_bounded(1, 5)), vec![vec![1, 1, 1, 1, 1]]);
    assert_eq!(parts_of(&enumerate_bounded(4, 0)), vec![Vec::<u32>::new()]);
}

#[test]
fn raising_operator_examples() {
    let r12 = OperatorSet::new(vec![(1, 2)]).unwrap();
    assert_eq!(raising_apply(&r12, &IntVector(vec![1, 1])).unwrap().0, vec![2, 0]);
    let r12r13 = OperatorSet::new(vec![(1, 2), (1, 3)]).unwrap();
    assert_eq!(raising_apply(&r12r13, &IntVector(vec![2, 1, 1])).unwrap().0, vec![4, 0, 0]);
    assert_eq!(raising_apply(&OperatorSet::identity(), &IntVector(vec![3, 1])).unwrap().0, vec![3, 1]);
    assert_eq!(h_coefficient(&IntVector(vec![2, 1, 1])), BigUint::from(12u32));
    assert_eq!(h_coefficient(&IntVector(vec![2, 2])), BigUint::from(6u32));
    assert_eq!(h_coefficient(&IntVector(vec![3, -1])), BigUint::from(0u32));
    assert_eq!(h_coefficient(&IntVector(vec![7])), BigUint::from(1u32));
}

#[test]
fn strong_dimension_examples() {
    for engine in [DimensionEngine::Tableaux, DimensionEngine::Raising] {
        assert_eq!(strong_dim(&b(&[2, 1, 1], 3), engine), BigUint::from(6u32));
        assert_eq!(strong_dim(&b(&[2, 1], 3), engine), BigUint::from(2u32));
        assert_eq!(strong_dim(&b(&[2, 2], 3), engine), BigUint::from(2u32));
        assert_eq!(strong_dim(&b(&[1], 3), engine), BigUint::from(1u32));
    }
    for x in enumerate_bounded(7, 7) {
        let d = hook_length_dimension(x.partition());
        assert_eq!(strong_dim_raising(&x), d);
        assert_eq!(strong_dim_tableaux(&x), d);
    }
}

fn rendered(terms: &[OperatorSet]) -> Vec<String> {
    let mut v: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    v.sort();
    v
}

#[test]
fn triangle_expansion_examples() {
    assert_eq!(rendered(&triangle_expand_inversions(2)), vec!["1", "R12"]);
    assert_eq!(triangle_expand_inversions(3).len(), 6);
    assert_eq!(triangle_expand_inversions(5).len(), 120);
    assert_eq!(rendered(&triangle_expand_intervals(3)), vec!["1", "R12", "R12·R13", "R23"]);
    let mut four = vec!["1", "R12", "R23", "R34", "R12·R13", "R23·R24", "R12·R34", "R12·R13·R14"];
    four.sort();
    assert_eq!(rendered(&triangle_expand_intervals(4)), four);
}

#[test]
fn composition_sum_examples() {
    assert_eq!(composition_sum(1), q(1, 1));
    assert_eq!(composition_sum(2), q(1, 2));
    assert_eq!(composition_sum(6), q(1, 720));
}

#[test]
fn triangle_vanishing_examples() {
    for c in 0..5 {
        assert!(triangle_vanishes(&IntVector(vec![c, c + 1]), 1).unwrap());
    }
    assert!(triangle_vanishes(&IntVector(vec![5, 5, 5, 7]), 3).unwrap());
    assert!(!triangle_vanishes(&IntVector(vec![5, 5, 5, 5]), 3).unwrap());
    assert!(triangle_vanishes(&IntVector(vec![1, 2]), 2).is_err());
}

#[test]
fn long_column_examples() {
    assert!(verify_long_column(&b(&[2, 1, 1], 3), LongColumnLemma::KMinusOneOnes).unwrap());
    assert!(verify_long_column(&b(&[2, 1, 1, 1], 3), LongColumnLemma::KOnes).unwrap());
    assert!(verify_long_column(&b(&[1, 1], 3), LongColumnLemma::KMinusOneOnes).unwrap());
    assert!(verify_long_column(&b(&[2, 1], 3), LongColumnLemma::KMinusOneOnes).is_err());
}

#[test]
fn chain_rates_for_three() {
    let a = ChainAnalysis::shared(3).unwrap();
    let m = &a.matrix;
    let i = |parts: &[u32]| factorial_index(&state(parts, 3));
    assert_eq!(m.entry(i(&[2, 1]), i(&[2, 1, 1])), q(3, 4));
    assert_eq!(m.entry(i(&[2, 1]), i(&[])), q(1, 4));
    assert_eq!(m.entry(i(&[]), i(&[1])), q(1, 1));
    assert_eq!(m.entry(i(&[1]), i(&[2])), q(1, 2));
    assert_eq!(m.entry(i(&[1]), i(&[1, 1])), q(1, 2));
    assert_eq!(m.entry(i(&[1, 1]), i(&[])), q(1, 3));
    assert_eq!(m.entry(i(&[2, 1, 1]), i(&[2])), q(1, 3));
}

#[test]
fn stationary_distribution_for_three() {
    let a = ChainAnalysis::shared(3).unwrap();
    let want = [(&[][..], 3), (&[1], 4), (&[1, 1], 3), (&[2], 3), (&[2, 1], 4), (&[2, 1, 1], 3)];
    for (parts, num) in want {
        assert_eq!(a.pi.get(&state(parts, 3)), &q(num, 20), "{parts:?}");
    }
    assert_eq!(a.pi.lcd(), BigUint::from(20u32));
    assert_eq!(m_k(3), BigUint::from(240u32));
    assert_eq!(a.pi.min(), &q(3, 20));
    let rho = a.rho();
    assert_eq!(rho, vec![q(1, 10); 3]);
    let pi = |parts: &[u32]| a.pi.get(&state(parts, 3)).clone();
    assert_eq!(pi(&[1, 1]) / q(3, 1) + pi(&[2, 1, 1]) / q(3, 1), q(1, 10));
    assert_eq!(pi(&[2, 1]) * q(1, 4) + pi(&[2, 1, 1]) * q(1, 3), q(1, 10));
}

#[test]
fn stationary_distribution_for_four() {
    let a = ChainAnalysis::shared(4).unwrap();
    assert_eq!(a.pi.lcd(), BigUint::from(280u32));
    assert_eq!(m_k(4), BigUint::from(16800u32));
    let at = |parts: &[u32]| a.pi.get(&state(parts, 4)).clone() * q(280, 1);
    assert_eq!(at(&[]), q(8, 1));
    assert_eq!(at(&[3, 2, 2, 1, 1, 1]), q(8, 1));
    assert_eq!(at(&[2, 1]), q(16, 1));
    assert_eq!(at(&[3, 2, 1, 1]), q(16, 1));
    let minimizers: Vec<&ReducedState> =
        a.matrix.states.iter().zip(&a.pi.values).filter(|(_, v)| **v == q(1, 35)).map(|(s, _)| s).collect();
    assert_eq!(minimizers.len(), 8);
    for parts in [&[][..], &[1, 1, 1], &[2, 2], &[2, 2, 1, 1, 1]] {
        let s = state(parts, 4);
        assert!(minimizers.contains(&&s));
        assert!(minimizers.contains(&&complement(&s)));
    }
    let i = |parts: &[u32]| factorial_index(&state(parts, 4));
    assert_eq!(a.matrix.entry(i(&[1, 1, 1]), i(&[])), q(1, 4));
}

#[test]
fn stationary_distribution_for_five() {
    let a = ChainAnalysis::new(5, DimensionEngine::Tableaux, SolveMethod::Modular).unwrap();
    assert_eq!(a.pi.lcd(), BigUint::from(70560u32));
}

#[test]
fn conjugation_matches_figure_values() {
    let a = ChainAnalysis::shared(3).unwrap();
    for s in &a.matrix.states {
        assert_eq!(a.pi.get(s), a.pi.get(&k_conjugate_state(s)));
    }
}

#[test]
fn tasep_map_examples() {
    assert_eq!(alpha(&"1-4-2-3-5".parse().unwrap()).parts(), &[3, 1]);
    assert!(alpha(&CyclicState::identity(5)).parts().is_empty());
    assert_eq!(alpha(&"3-2-1-4".parse().unwrap()).parts(), &[2, 1, 1]);
    assert_eq!(alpha(&"4-3-2-1-5".parse().unwrap()).parts(), &[3, 2, 2, 1, 1, 1]);
    assert_eq!(alpha_inv(&state(&[3, 3, 1, 1], 5)).to_string(), "4-2-3-5-1-6");
    assert_eq!(alpha_inv(&state(&[2, 1], 3)).to_string(), "1-3-2-4");
    assert_eq!(alpha_inv(&ReducedState::empty(4)), CyclicState::identity(4));
}

#[test]
fn tasep_jump_examples() {
    let j = jumps(&"3-1-2-4".parse().unwrap());
    let moves: Vec<(u32, u32, String)> = j.iter().map(|x| (x.value, x.passed, x.to.to_string())).collect();
    assert_eq!(moves, vec![(1, 3, "1-3-2-4".to_string()), (3, 4, "1-2-3-4".to_string())]);
    let rev = jumps(&"4-3-2-1-5".parse().unwrap());
    assert_eq!(rev.iter().map(|x| x.value).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    let id = jumps(&CyclicState::identity(4));
    assert_eq!(id.len(), 1);
    assert_eq!(id[0].value, 1);
}

#[test]
fn simulator_examples() {
    let a = ChainAnalysis::shared(3).unwrap();
    let table = TransitionTable::from_matrix(&a.matrix);
    for seed in 0..20 {
        let mut sim = Simulator::new(&table, seed, 0);
        assert_eq!(table.states[sim.step()].parts(), &[1]);
    }
    let mut sim = Simulator::new(&table, 5, 0);
    for _ in 0..200 {
        let before = sim.state();
        let now = sim.step();
        if before.reduced.parts() == [2, 1] {
            let after = &table.states[now];
            let removed = sim.ledger().counts[1] == before.ledger.counts[1] + 1;
            assert!(after.parts() == [2, 1, 1] || (after.parts().is_empty() && removed));
        }
    }
}

#[test]
fn reconstruction_examples() {
    let s = SimState { reduced: state(&[2, 1], 3), ledger: RectangleLedger::zero(3), n: 3 };
    assert_eq!(reconstruct_core(&s, 100).unwrap(), bounded_to_core(&b(&[2, 1], 3)));
    let mut ledger = RectangleLedger::zero(4);
    ledger.record(4);
    let s = SimState { reduced: state(&[3, 1], 4), ledger, n: 8 };
    let c = reconstruct_core(&s, 100).unwrap();
    assert_eq!(c.parts(), &[7, 3, 1]);
    assert_eq!(core_to_bounded(&c).size(), 8);
}

#[test]
fn boundary_examples() {
    assert_eq!(boundary(&CorePartition::empty(4), 1).vertices, vec![(0.0, 0.0)]);
    let v = boundary(&core(&[2, 1], 4), 1).vertices;
    assert!(v.contains(&(1.0, 2.0)) && v.contains(&(2.0, 1.0)));
}
