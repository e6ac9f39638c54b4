mod common;

use common::*;
use edgedom::bounds::{construct_t1, construct_t2, upper_bound, UpperKind};
use edgedom::generators::{generate, GenSpec};
use edgedom::matching::{exact_min_maximal, greedy_maximal, is_maximal, max_bipartite_matching, naive_min_maximal};
use edgedom::saturator::{lemma1_saturate_traced, lemma2_saturate};
use edgedom::structure::{is_claw_free, is_tstar_free, odd_closed_walk, two_coloring};
use edgedom::{Graph, Matching, RationalBound};
use proptest::prelude::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    assert!(max_n <= 11);
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| {
        // at most 55 pairs, so the mask fits
        graph_from_mask(n, mask & ((1u64 << (n * (n - 1) / 2)) - 1))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.0..0.6f64).prop_map(|(n, seed, p)| random_connected(&mut rng(seed), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parse_serialize_roundtrip(g in small_graph(11)) {
        let text = g.serialize();
        let back = Graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn deletion_recounts_edges(g in small_graph(10), pick in any::<u16>()) {
        let s: Vec<usize> = (0..g.n()).filter(|v| pick >> v & 1 == 1).collect();
        let (h, map) = g.delete_vertices(&s).unwrap();
        let kept: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
        let recount = g.edges().filter(|(a, b)| !s.contains(a) && !s.contains(b)).count();
        prop_assert_eq!(h.m(), recount);
        prop_assert_eq!(map.originals(), kept.as_slice());
        for (a, b) in h.edges() {
            prop_assert!(g.has_edge(map.to_original(a), map.to_original(b)));
        }
        for (c, cmap) in h.components() {
            let full = map.compose(&cmap);
            for v in 0..c.n() {
                prop_assert!(!s.contains(&full.to_original(v)));
            }
        }
    }

    #[test]
    fn components_partition_vertices(g in small_graph(10)) {
        let sets = g.component_vertex_sets();
        let mut all: Vec<usize> = sets.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for (a, b) in g.edges() {
            prop_assert!(sets.iter().any(|s| s.contains(&a) && s.contains(&b)));
        }
        for (c, _) in g.components() {
            prop_assert!(is_connected(&c));
        }
    }

    #[test]
    fn exact_agrees_with_naive_and_brute_force(g in small_graph(8)) {
        let r = exact_min_maximal(&g, u64::MAX);
        prop_assert!(!r.budget_hit);
        prop_assert_eq!(r.gamma_e, naive_min_maximal(&g).unwrap());
        prop_assert_eq!(r.gamma_e, brute_gamma_e(&g));
        prop_assert!(is_maximal_matching(&g, r.witness.edges()));
        prop_assert_eq!(r.witness.len(), r.gamma_e);
    }

    #[test]
    fn detectors_agree_with_subset_oracles(g in small_graph(8)) {
        let (claw_free, claw) = is_claw_free(&g);
        prop_assert_eq!(claw_free, !brute_has_claw(&g));
        if let Some(w) = claw {
            let (h, _) = g.induced(&w).unwrap();
            prop_assert!(brute_has_claw(&h));
        }
        let (tstar_free, tstar) = is_tstar_free(&g);
        prop_assert_eq!(tstar_free, !brute_has_tstar(&g));
        if let Some(w) = tstar {
            let (h, _) = g.induced(&w).unwrap();
            prop_assert!(brute_has_tstar(&h));
        }
    }

    #[test]
    fn two_coloring_or_odd_walk(g in small_graph(10)) {
        match two_coloring(&g) {
            Some((a, _)) => {
                prop_assert!(g.edges().all(|(x, y)| a.contains(&x) != a.contains(&y)));
                prop_assert!(odd_closed_walk(&g).is_none());
            }
            None => {
                let w = odd_closed_walk(&g).unwrap();
                prop_assert_eq!(w.first(), w.last());
                prop_assert!(w.len().is_multiple_of(2), "odd walk has an odd number of edges");
                prop_assert!(w.windows(2).all(|p| g.has_edge(p[0], p[1])));
            }
        }
    }

    #[test]
    fn greedy_extends_seed_to_maximal(g in small_graph(10), pick in any::<u64>()) {
        // seed: the edges of some matching, chosen by bits of `pick`
        let mut used = vec![false; g.n()];
        let seed: Vec<(usize, usize)> = g
            .edges()
            .enumerate()
            .filter(|&(i, (a, b))| {
                let take = pick >> (i % 64) & 1 == 1 && !used[a] && !used[b];
                if take {
                    used[a] = true;
                    used[b] = true;
                }
                take
            })
            .map(|(_, e)| e)
            .collect();
        let seed = Matching::new(&g, &seed).unwrap();
        let m = greedy_maximal(&g, &seed, None).unwrap();
        prop_assert!(seed.edges().iter().all(|e| m.edges().contains(e)));
        prop_assert!(is_maximal_matching(&g, m.edges()));
        prop_assert!(is_maximal(&g, &m).unwrap());
    }

    #[test]
    fn bipartite_matching_is_maximum(g in small_graph(10)) {
        if let Some((a, b)) = two_coloring(&g) {
            let m = max_bipartite_matching(&g, &a, &b).unwrap();
            prop_assert_eq!(m.len(), brute_max_matching_between(&g, &a, &b));
        }
    }

    #[test]
    fn lemma1_postconditions(g in connected_graph(14)) {
        if g.min_degree() == g.max_degree() {
            return Ok(());
        }
        let low = g.min_degree();
        for u in (0..g.n()).filter(|&u| g.degree(u) == low) {
            for &v in g.neighbors(u).iter().filter(|&&v| g.degree(v) > low) {
                let (m, rounds) = lemma1_saturate_traced(&g, u, v).unwrap();
                prop_assert_eq!(saturates(&g, u, m.edges()), Ok(()));
                prop_assert!(rounds.len() <= g.degree(u) + 1);
                for s in &rounds {
                    prop_assert_eq!(s.check(&g, u), Ok(()));
                }
            }
        }
    }

    #[test]
    fn lemma2_postconditions(delta in 2usize..=5, half in 3usize..=8, seed in any::<u64>()) {
        let n = if delta % 2 == 1 { 2 * half } else { 2 * half + 1 };
        let g = generate(&GenSpec::random_regular(delta, n, seed)).unwrap();
        let excluded = (n == 2 * delta && two_coloring(&g).is_some()) || (delta % 2 == 1 && n == delta + 1);
        if excluded {
            return Ok(());
        }
        for u in 0..g.n() {
            let m = lemma2_saturate(&g, u).unwrap();
            prop_assert_eq!(saturates(&g, u, m.edges()), Ok(()));
            let ext = greedy_maximal(&g, &m, Some(u)).unwrap();
            prop_assert!(!ext.covers(u));
            prop_assert!(ext.len() <= (n - 1) / 2);
        }
    }

    #[test]
    fn t2_construction_invariants(delta in 3usize..=5, n in 3usize..=14, seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_capped(&mut r, n, delta, 4 * n);
        if g.components().iter().any(|(c, _)| c.regular_degree() == Some(delta)) {
            return Ok(());
        }
        let c = construct_t2(&g, delta, true).unwrap();
        prop_assert!(is_maximal_matching(&g, c.matching.edges()));
        prop_assert!(upper_bound(UpperKind::T2, delta, g.n(), g.m()).unwrap().admits(c.matching.len()));
        prop_assert_eq!(c.trace.replay(&g).unwrap(), c.matching.clone());
        prop_assert_eq!(c.trace.check_t2_accounting(&g, delta), Ok(()));
        prop_assert!(exact_min_maximal(&g, u64::MAX).gamma_e <= c.matching.len());
    }

    #[test]
    fn t1_construction_invariants(n in 6usize..=30, seed in any::<u64>()) {
        let g = generate(&GenSpec::random_subcubic_bip_tstar(n, seed)).unwrap();
        let c = construct_t1(&g, true).unwrap();
        prop_assert!(is_maximal_matching(&g, c.matching.edges()));
        prop_assert!(upper_bound(UpperKind::T1, 3, g.n(), g.m()).unwrap().admits(c.matching.len()));
        prop_assert_eq!(c.trace.replay(&g).unwrap(), c.matching.clone());
        prop_assert_eq!(c.trace.check_t1_accounting(), Ok(()));
    }

    #[test]
    fn generators_are_deterministic(delta in 3usize..=5, half in 4usize..=10, seed in any::<u64>()) {
        let spec = GenSpec::random_regular(delta, 2 * half, seed);
        prop_assert_eq!(generate(&spec).unwrap().serialize(), generate(&spec).unwrap().serialize());
        let spec = GenSpec::random_subcubic_bip_tstar(4 * half, seed);
        prop_assert_eq!(generate(&spec).unwrap().serialize(), generate(&spec).unwrap().serialize());
    }

    #[test]
    fn rational_roundtrip(p in -1000i64..1000, q in 1i64..1000) {
        let r = RationalBound::new(p, q);
        prop_assert_eq!(r.to_string().parse::<RationalBound>().unwrap(), r);
        prop_assert_eq!(r.admits(r.floor().max(0) as usize), r.floor() >= 0);
        prop_assert!(r.ceil() - 1 < r.floor() + 1);
    }
}
