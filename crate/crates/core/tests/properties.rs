mod common;

use std::collections::BTreeSet;

use cactuslab_core::families::random_good_cactus;
use cactuslab_core::search::{hamilton_cycle, spanning_even_cactus, Budget, CactusConstraints};
use cactuslab_core::{analyze_cactus, cactus_prism_hamilton, prism, reflect, Graph, GraphJson, PrismVertex};
use common::random_connected;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, n: usize, extra: usize) -> Graph {
    random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, extra)
}

/// Checks a vertex sequence as a Hamilton cycle of `host` by hand.
fn is_hamilton_cycle(host: &Graph, seq: &[String]) -> bool {
    let distinct: BTreeSet<&String> = seq.iter().collect();
    distinct.len() == seq.len()
        && seq.len() == host.vertex_count()
        && (0..seq.len()).all(|i| host.has_edge(&seq[i], &seq[(i + 1) % seq.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prism_sizes(seed: u64, n in 1usize..15, extra in 0usize..10) {
        let g = graph(seed, n, extra);
        let p = prism(&g);
        prop_assert_eq!(p.vertex_count(), 2 * g.vertex_count());
        prop_assert_eq!(p.edge_count(), 2 * g.edge_count() + g.vertex_count());
    }

    #[test]
    fn reflection_is_an_involution(seed: u64, n in 1usize..12, extra in 0usize..8) {
        let p = prism(&graph(seed, n, extra));
        let r = reflect(&p).unwrap();
        prop_assert_eq!(&r, &p);
        prop_assert_eq!(&reflect(&r).unwrap(), &p);
    }

    #[test]
    fn graph_json_round_trip(seed: u64, n in 1usize..12, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        let wire: GraphJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(wire.edges.len(), g.edge_count());
    }

    #[test]
    fn cactus_prisms_are_hamiltonian(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_good_cactus(&mut rng, 20, true, None);
        prop_assume!(q.vertex_count() >= 2);
        let rep = analyze_cactus(&q).unwrap();
        let leaves: Vec<String> = rep
            .block_degrees
            .iter()
            .filter(|(_, &b)| b == 1)
            .map(|(v, _)| v.clone())
            .collect();
        let cycle = cactus_prism_hamilton(&q, &leaves).unwrap();
        let seq: Vec<String> = cycle.iter().map(PrismVertex::label).collect();
        prop_assert!(is_hamilton_cycle(&prism(&q), &seq));
        let len = seq.len();
        for v in &leaves {
            let (a, b) = (PrismVertex::alpha(v.as_str()).label(), PrismVertex::beta(v.as_str()).label());
            let uses = (0..len).any(|i| {
                let (x, y) = (&seq[i], &seq[(i + 1) % len]);
                (*x == a && *y == b) || (*x == b && *y == a)
            });
            prop_assert!(uses, "vertical at {} missing", v);
        }
    }

    #[test]
    fn searches_are_repeatable(seed: u64, n in 4usize..11, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let a = hamilton_cycle(&g, Budget::unlimited());
        let b = hamilton_cycle(&g, Budget::unlimited());
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.witness, b.witness);
        let c = CactusConstraints::good();
        let a = spanning_even_cactus(&g, &c, Budget::unlimited()).unwrap();
        let b = spanning_even_cactus(&g, &c, Budget::unlimited()).unwrap();
        prop_assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn relaxing_constraints_keeps_witnesses(seed: u64, n in 4usize..12, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let b = Budget::unlimited();
        let tight = spanning_even_cactus(&g, &CactusConstraints::good().with_max_degree(3), b).unwrap();
        let good = spanning_even_cactus(&g, &CactusConstraints::good(), b).unwrap();
        let any = spanning_even_cactus(&g, &CactusConstraints::any(), b).unwrap();
        prop_assert!(!tight.found() || good.found());
        prop_assert!(!good.found() || any.found());
    }
}
