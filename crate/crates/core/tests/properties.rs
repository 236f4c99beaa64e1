use kcore::chain::verify::k_conjugate_state;
use kcore::chain::ChainAnalysis;
use kcore::dimensions::{evaluate, naive_triangle_expansion, strong_dim, triangle_expand_inversions, DimensionEngine, IntVector};
use kcore::posets::weak_covers_bounded;
use kcore::simulate::{boundary, compare_to_limit, reconstruct_core, Simulator, TransitionTable};
use kcore::tasep::{alpha, alpha_inv, word_of_core, CyclicState};
use kcore::{
    bounded_to_core, complement, core_to_bounded, enumerate_reduced_states, expand, factorial_index, k_conjugate, reduce,
    KBoundedPartition,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn bounded(max_k: u32, max_len: usize) -> impl Strategy<Value = KBoundedPartition> {
    (1..=max_k).prop_flat_map(move |k| {
        prop::collection::vec(1..=k, 0..max_len).prop_map(move |mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            KBoundedPartition::from_parts(&parts, k).unwrap()
        })
    })
}

fn permutation(max_k: u32) -> impl Strategy<Value = CyclicState> {
    (1..=max_k).prop_flat_map(|k| {
        Just((1..=k + 1).collect::<Vec<u32>>()).prop_shuffle().prop_map(|w| CyclicState::new(w).unwrap())
    })
}

proptest! {
    #[test]
    fn core_bijection_round_trips(b in bounded(6, 40)) {
        let c = bounded_to_core(&b);
        prop_assert!(c.partition().is_core(b.k() + 1));
        prop_assert_eq!(core_to_bounded(&c), b);
    }

    #[test]
    fn reduction_round_trips(b in bounded(6, 40)) {
        let (r, ledger) = reduce(&b);
        prop_assert_eq!(r.size() + ledger.area(), b.size());
        let l = r.multiplicities();
        for i in 1..=b.k() {
            prop_assert!(l[i as usize - 1] <= b.k() - i);
        }
        let back = expand(&r, &ledger);
        prop_assert_eq!(back.partition(), b.partition());
    }

    #[test]
    fn involutions(b in bounded(6, 30)) {
        prop_assert_eq!(k_conjugate(&k_conjugate(&b)), b.clone());
        let (r, _) = reduce(&b);
        prop_assert_eq!(complement(&complement(&r)), r.clone());
        prop_assert_eq!(k_conjugate_state(&k_conjugate_state(&r)), r);
    }

    #[test]
    fn conjugation_preserves_dimension(b in bounded(4, 8)) {
        let c = k_conjugate(&b);
        prop_assert_eq!(strong_dim(&b, DimensionEngine::Tableaux), strong_dim(&c, DimensionEngine::Tableaux));
    }

    #[test]
    fn pieri_row_sum(b in bounded(5, 7)) {
        let d = strong_dim(&b, DimensionEngine::Tableaux);
        let up: BigUint = weak_covers_bounded(&b).iter().map(|x| strong_dim(x, DimensionEngine::Tableaux)).sum();
        prop_assert_eq!(up, d * BigUint::from(b.size() + 1));
    }

    #[test]
    fn tasep_map_is_a_bijection(c in permutation(7)) {
        let s = alpha(&c);
        prop_assert_eq!(alpha_inv(&s), c);
    }

    #[test]
    fn tasep_word_of_core_matches_reduced_state(b in bounded(6, 30)) {
        let (r, _) = reduce(&b);
        prop_assert_eq!(word_of_core(&bounded_to_core(&b)), alpha_inv(&r));
    }

    #[test]
    fn reversal_is_complement(c in permutation(7)) {
        prop_assert_eq!(alpha(&c.reversed()), complement(&alpha(&c)));
    }

    #[test]
    fn inversion_expansion_is_the_full_product(v in prop::collection::vec(0i64..=6, 1..=5)) {
        let t = v.len();
        let v = IntVector(v);
        prop_assert_eq!(
            evaluate(&triangle_expand_inversions(t), &v).unwrap(),
            evaluate(&naive_triangle_expansion(t), &v).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simulation_conserves_boxes(k in 2u32..=5, seed in any::<u64>(), steps in 1u64..3000) {
        let a = ChainAnalysis::shared(k).unwrap();
        let table = TransitionTable::from_matrix(&a.matrix);
        let mut sim = Simulator::new(&table, seed, 0);
        for _ in 0..steps {
            sim.step();
        }
        let s = sim.state();
        prop_assert_eq!(s.reduced.size() + s.ledger.area(), steps);
        let c = reconstruct_core(&s, 1 << 20).unwrap();
        prop_assert_eq!(core_to_bounded(&c).size(), steps);
        prop_assert_eq!(word_of_core(&c), alpha_inv(&s.reduced));
    }

    #[test]
    fn fit_is_symmetric_under_swap(k in 2u32..=4, seed in any::<u64>()) {
        let a = ChainAnalysis::shared(k).unwrap();
        let table = TransitionTable::from_matrix(&a.matrix);
        let mut sim = Simulator::new(&table, seed, 0);
        let n = 5000;
        for _ in 0..n {
            sim.step();
        }
        let b = boundary(&reconstruct_core(&sim.state(), 1 << 20).unwrap(), n);
        let (f, g) = (compare_to_limit(&b, k).unwrap(), compare_to_limit(&b.swapped(), k).unwrap());
        prop_assert!((f.gamma - g.gamma).abs() < 1e-9);
        prop_assert!((f.max_deviation - g.max_deviation).abs() < 1e-9);
        prop_assert!((f.mean_sq_deviation - g.mean_sq_deviation).abs() < 1e-12);
    }
}

#[test]
fn factorial_index_is_a_bijection() {
    for k in 1..=6 {
        let states = enumerate_reduced_states(k);
        let mut seen = vec![false; states.len()];
        for s in &states {
            let i = factorial_index(s);
            assert!(!seen[i]);
            seen[i] = true;
        }
        assert!(seen.into_iter().all(|x| x));
    }
}
