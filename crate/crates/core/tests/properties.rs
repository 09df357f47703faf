use proptest::prelude::*;
use rainbow_core::adversary::{apply_adversary, verify_subfamily, AdversaryStrategy, FloorPolicy};
use rainbow_core::graph::crossing_codegree;
use rainbow_core::sampling::{sample_family, sample_gnp, sample_kpartite};
use rainbow_core::{KPartiteHypergraph, RandomSeed};

fn strategy() -> impl Strategy<Value = AdversaryStrategy> {
    prop_oneof![
        Just(AdversaryStrategy::None),
        Just(AdversaryStrategy::RandomThinning),
        Just(AdversaryStrategy::GreedyGlobal),
        Just(AdversaryStrategy::BipartiteBias),
        (0usize..6).prop_map(|focus| AdversaryStrategy::StarCut { focus }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_sum_is_twice_edge_count(n in 1usize..40, p in 0.0f64..=1.0, s in any::<u64>()) {
        let g = sample_gnp(n, p, RandomSeed::new(s)).unwrap();
        let sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(sum % 2, 0);
        prop_assert_eq!(sum, 2 * g.edges().count());
    }

    #[test]
    fn deleting_edges_never_raises_min_degree(n in 2usize..30, p in 0.0f64..=1.0, s in any::<u64>(), drop in 0usize..50) {
        let host = sample_gnp(n, p, RandomSeed::new(s)).unwrap();
        let mut sub = host.clone();
        for (u, v) in host.edges().take(drop) {
            sub.remove_edge(u, v);
        }
        prop_assert!(sub.is_subgraph_of(&host));
        prop_assert!(sub.min_degree() <= host.min_degree());
    }

    #[test]
    fn codegree_is_antitone(n in 1usize..5, q in 0.0f64..=1.0, s in any::<u64>(), drop in 0usize..20) {
        let host = sample_kpartite(3, n, q, RandomSeed::new(s)).unwrap();
        let mut sub = host.clone();
        let victims: Vec<Vec<usize>> = host.edges().take(drop).cloned().collect();
        for e in &victims {
            sub.remove_edge(e);
        }
        for d in 1..3 {
            prop_assert!(crossing_codegree(&sub, d).unwrap() <= crossing_codegree(&host, d).unwrap());
        }
    }

    #[test]
    fn sampling_is_a_function_of_the_labels(n in 1usize..25, m in 1usize..6, p in 0.0f64..=1.0, s in any::<u64>(), t in any::<u32>()) {
        let seed = RandomSeed::new(s).with_experiment(3).with_trial(t as u64);
        prop_assert_eq!(sample_family(n, m, p, seed).unwrap(), sample_family(n, m, p, seed).unwrap());
    }

    #[test]
    fn adversary_output_is_contained_floored_and_deterministic(
        n in 4usize..16,
        p in 0.3f64..=1.0,
        floor in 0usize..5,
        strat in strategy(),
        s in any::<u64>(),
    ) {
        let strat = match strat {
            AdversaryStrategy::StarCut { focus } => AdversaryStrategy::StarCut { focus: focus % n },
            other => other,
        };
        let seed = RandomSeed::new(s);
        let host = sample_family(n, 3, p, seed).unwrap();
        let policy = FloorPolicy::CapAtHost;
        let a = apply_adversary(&host, strat, floor, policy, seed).unwrap();
        let b = apply_adversary(&host, strat, floor, policy, seed).unwrap();
        prop_assert_eq!(&a, &b);
        for (sub, orig) in a.colors().iter().zip(host.colors()) {
            prop_assert!(sub.is_subgraph_of(orig));
            for v in 0..n {
                prop_assert!(sub.degree(v) >= floor.min(orig.degree(v)));
            }
        }
        if host.min_degree() >= floor {
            prop_assert!(verify_subfamily(&host, &a, floor).is_ok());
        }
    }
}

#[test]
fn complete_kpartite_codegree() {
    let h = KPartiteHypergraph::complete(3, 4);
    assert_eq!(crossing_codegree(&h, 2).unwrap(), 4);
    assert_eq!(crossing_codegree(&h, 1).unwrap(), 16);
}
