use std::cmp::Ordering;

use peg_core::engine::{
    apply_move_multi, legal_moves, query_target, reach_set, reach_target_exhaustive, replay_with_ancestors,
    replay_witness, witness_search, Distribution, Mode, MultiDistribution, SearchBudget,
};
use peg_core::graph::{all_pairs_distances, generate, leaves, Graph};
use peg_core::solvers::{optimal_pegging_number, pegging_number};
use peg_core::weights::{distribution_weight, omega_pow, optimal_lower_bound, GoldenNumber};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree_and_pegs(max_n: usize) -> impl Strategy<Value = (Graph, Distribution)> {
    (2..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, seed, mask)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generate::random_tree(n, &mut rng);
        let mut d: Distribution = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if d.is_empty() {
            d.insert((mask as usize) % n);
        }
        (g, d)
    })
}

fn any_graph_and_pegs() -> impl Strategy<Value = (Graph, Distribution)> {
    let corpus = generate::corpus(8);
    (0..corpus.len(), any::<u64>()).prop_map(move |(i, mask)| {
        let g = corpus[i].clone();
        let n = g.vertex_count();
        let mut d: Distribution = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if d.is_empty() {
            d.insert(0);
        }
        (g, d)
    })
}

fn unlimited() -> SearchBudget {
    SearchBudget::unlimited()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stacking_and_peggling_reach_what_proper_reaches((g, d) in any_graph_and_pegs()) {
        let proper = reach_set(&g, &d, Mode::Proper, unlimited()).unwrap();
        for mode in [Mode::Stacking, Mode::Peggling] {
            let other = reach_set(&g, &d, mode, unlimited()).unwrap();
            prop_assert!(other.complete);
            prop_assert_eq!(other.reachable(), proper.reachable());
        }
    }

    #[test]
    fn reachable_targets_have_weight_at_least_one((g, d) in any_graph_and_pegs()) {
        let out = reach_set(&g, &d, Mode::Proper, unlimited()).unwrap();
        for t in out.reachable().iter() {
            prop_assert_ne!(distribution_weight(&g, t, &d).unwrap().cmp_integer(1), Ordering::Less);
        }
    }

    #[test]
    fn every_legal_move_keeps_weight_from_rising((g, d) in any_graph_and_pegs(), mode_pick in 0usize..3) {
        let mode = [Mode::Proper, Mode::Stacking, Mode::Peggling][mode_pick];
        let start = d.to_multi();
        let dist = all_pairs_distances(&g);
        let weight = |m: &MultiDistribution, t: usize| -> GoldenNumber {
            m.iter().map(|(v, c)| omega_pow(dist[v][t]).scale_int(c as u64)).sum()
        };
        for m in legal_moves(&g, &start, mode) {
            let next = apply_move_multi(&g, &start, &m).unwrap();
            for t in g.vertices() {
                prop_assert!(weight(&next, t) <= weight(&start, t));
            }
        }
    }

    #[test]
    fn pipeline_agrees_with_exhaustive_search((g, d) in tree_and_pegs(9), t_pick in any::<usize>()) {
        let t = t_pick % g.vertex_count();
        let fast = query_target(&g, &d, t, SearchBudget::default()).unwrap().verdict;
        let slow = reach_target_exhaustive(&g, &d, t, unlimited()).unwrap().verdict;
        prop_assert!(!fast.is_unknown());
        prop_assert_eq!(fast.is_reachable(), slow.is_reachable());
        if let Some(w) = fast.witness() {
            prop_assert!(replay_witness(&g, &d, w, t, Mode::Stacking).is_ok());
        }
    }

    #[test]
    fn witnesses_replay_and_ancestors_stay_disjoint((g, d) in any_graph_and_pegs(), t_pick in any::<usize>()) {
        let t = t_pick % g.vertex_count();
        let out = witness_search(&g, &d, t, SearchBudget::default()).unwrap();
        prop_assert!(!out.verdict.is_unreachable());
        if let Some(w) = out.verdict.witness() {
            prop_assert!(replay_witness(&g, &d, w, t, Mode::Peggling).is_ok());
            let replay = replay_with_ancestors(&g, &d, w).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for (_, anc) in &replay.pegs {
                prop_assert!(!anc.is_empty());
                for a in anc {
                    prop_assert!(d.contains(*a));
                    prop_assert!(seen.insert(*a), "ancestor {} shared", a);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_values_bracket_correctly((g, _) in tree_and_pegs(8)) {
        let p = optimal_pegging_number(&g, SearchBudget::default()).unwrap().value.unwrap();
        let big = pegging_number(&g, SearchBudget::default()).unwrap().value.unwrap();
        prop_assert!(p <= big && big <= g.vertex_count());
        prop_assert!(optimal_lower_bound(&g, &leaves(&g)).unwrap() <= p);
    }
}
