//! Cross-module invariants through the public API.

use chibound_core::alloy::{
    alloy_base_case, alloy_induction_easy, alloy_induction_hard, monotonic_path, reduce_alloy, validate_alloy,
    AlloyParams, Stratification,
};
use chibound_core::bull::{decompose_bull, glue, is_proper_homogeneous, substitute};
use chibound_core::census::sample_star_free;
use chibound_core::exact::{chromatic_number, clique_number};
use chibound_core::generators::gnp;
use chibound_core::paw::{classify_paw, color_paw_star_free, ComponentKind};
use chibound_core::{Budget, Graph, Pattern, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(h: &Pattern, n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_star_free(h, n, &mut rng, 10_000).unwrap().unwrap()
}

/// Every vertex of layer `i + 1` keeps a neighbor in layer `i`.
fn supported(g: &Graph, lower: &VertexSet, upper: &VertexSet) -> bool {
    upper.iter().all(|v| g.neighbors(v).iter().any(|&u| lower.contains(u)))
}

fn literal_minimality(g: &Graph, strat: &Stratification) -> bool {
    (0..strat.t()).all(|i| {
        strat.layers[i].iter().all(|v| {
            let mut smaller = strat.layers[i].clone();
            smaller.remove(v);
            !supported(g, &smaller, &strat.layers[i + 1])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn substituted_copies_are_homogeneous_sets(
        n1 in 2usize..8,
        n2 in 2usize..6,
        s1 in any::<u64>(),
        s2 in any::<u64>(),
        u in any::<prop::sample::Index>(),
    ) {
        let g1 = gnp(n1, 0.5, s1).unwrap();
        let g2 = gnp(n2, 0.5, s2).unwrap();
        let u = u.index(n1);
        let g = substitute(&g1, u, &g2).unwrap();
        prop_assert_eq!(g.n(), n1 + n2 - 1);
        let copy: VertexSet = (n1 - 1..g.n()).collect();
        prop_assert_eq!(&g.induced_subgraph(&copy).unwrap().graph, &g2);
        for x in 0..n1 - 1 {
            let seen = copy.iter().filter(|&y| g.has_edge(x, y)).count();
            let old = if x < u { x } else { x + 1 };
            prop_assert_eq!(seen, if g1.has_edge(old, u) { n2 } else { 0 });
        }
        prop_assert!(is_proper_homogeneous(&g, &copy));
    }

    #[test]
    fn gluing_creates_a_cut_vertex(n1 in 2usize..7, n2 in 2usize..7, s1 in any::<u64>(), s2 in any::<u64>(), u1 in any::<prop::sample::Index>(), u2 in any::<prop::sample::Index>()) {
        let g1 = gnp(n1, 0.6, s1).unwrap();
        let g2 = gnp(n2, 0.6, s2).unwrap();
        prop_assume!(g1.is_connected() && g2.is_connected());
        let (u1, u2) = (u1.index(n1), u2.index(n2));
        let g = glue(&g1, &g2, u1, u2).unwrap();
        prop_assert_eq!(g.n(), n1 + n2 - 1);
        prop_assert!(g.cut_vertices().contains(u1));
    }

    #[test]
    fn decompositions_validate_on_sampled_bull_free_graphs(n in 6usize..13, seed in any::<u64>()) {
        let g = sample(&Pattern::bull(), n, seed);
        let d = decompose_bull(&g).unwrap();
        prop_assert!(d.validate(&g), "{} on {:?}", d, g);
    }

    #[test]
    fn paw_free_colorings_are_optimal(n in 3usize..11, seed in any::<u64>()) {
        let g = sample(&Pattern::paw(), n, seed);
        let c = color_paw_star_free(&g).unwrap();
        let chi = chromatic_number(&g, Budget::default());
        prop_assert!(c.is_proper(&g) && chi.exact);
        prop_assert_eq!(c.num_colors(), chi.value);
        for comp in classify_paw(&g).unwrap().components {
            if let ComponentKind::CompleteMultipartite(parts) = &comp.kind {
                let sub = g.induced_subgraph(&comp.vertices).unwrap().graph;
                prop_assert_eq!(clique_number(&sub).0, parts.len());
            }
        }
    }

    #[test]
    fn reductions_are_minimal_and_monotonic(n in 6usize..16, prob in 0.15f64..0.5, seed in any::<u64>()) {
        let g = gnp(n, prob, seed).unwrap();
        prop_assume!(g.is_connected());
        let p = AlloyParams::new(1, 1, 0).relaxed();
        let Ok(a) = alloy_base_case(&g, 0, &p) else { return Ok(()) };
        let Ok((red, strat)) = reduce_alloy(&g, &a, &p) else { return Ok(()) };
        prop_assert!(validate_alloy(&g, &red, Budget::default()).is_valid());
        prop_assert_eq!(&strat.layers[0], &VertexSet::singleton(red.x));
        for i in 0..strat.t() {
            prop_assert!(supported(&g, &strat.layers[i], &strat.layers[i + 1]));
        }
        prop_assert!(literal_minimality(&g, &strat));
        let all = strat.vertex_set();
        for a in all.iter() {
            prop_assert!(monotonic_path(&strat, &g, a, red.x).is_some());
            for b in all.iter() {
                if let Some(path) = monotonic_path(&strat, &g, a, b) {
                    let vs = &path.vertices;
                    let (la, lb) = (strat.layer_of(a).unwrap(), strat.layer_of(b).unwrap());
                    prop_assert_eq!(vs.len(), la.abs_diff(lb) + 1);
                    for (i, w) in vs.windows(2).enumerate() {
                        prop_assert!(g.has_edge(w[0], w[1]));
                        prop_assert_eq!(strat.layer_of(w[0]).unwrap().abs_diff(strat.layer_of(w[1]).unwrap()), 1, "step {}", i);
                    }
                    let sub = g.induced_subgraph(&path.vertex_set()).unwrap().graph;
                    prop_assert_eq!(sub.edge_count(), vs.len() - 1);
                }
            }
        }
    }

}

proptest! {
    // most sparse hosts stop early; 300 cases reach every branch
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn relaxed_induction_rounds_validate(n in 14usize..24, prob in 0.08f64..0.2, seed in any::<u64>()) {
        let g = gnp(n, prob, seed).unwrap();
        prop_assume!(g.is_connected());
        let p = AlloyParams::new(1, 1, 0).relaxed();
        let Ok(a) = alloy_base_case(&g, 0, &p) else { return Ok(()) };
        let Ok((red, strat)) = reduce_alloy(&g, &a, &p) else { return Ok(()) };
        let step = if strat.t() >= 3 && strat.first_unstable(&g).is_some() {
            alloy_induction_easy(&g, &red, &strat, &p)
        } else {
            alloy_induction_hard(&g, &red, &strat, &p)
        };
        if let Ok(step) = step {
            prop_assert_eq!(step.alloy.n, red.n + 1);
            prop_assert!(validate_alloy(&g, &step.alloy, Budget::default()).is_valid());
        }
    }
}
