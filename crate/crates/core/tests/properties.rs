mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use nutforge::construct::ConstructionStep;
use nutforge::enumerate::{enumerate_leafless, enumerate_nuts};
use nutforge::format::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use nutforge::kernel::nullity;
use nutforge::planarity::{classify_kuratowski, is_planar, test_planarity, KuratowskiKind, Witness};
use nutforge::{verify_nut, Graph, ParameterPair};

use common::{bridges_by_deletion, connected, random_chemical, Classes};

fn pair(v3: usize, v2: usize) -> ParameterPair {
    ParameterPair::new(v3, v2).unwrap()
}

/// Random connected chemical graph plus a relabelling of it.
fn chemical_with_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (3usize..=12, 0usize..=4, any::<u64>()).prop_map(|(n, extra, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_chemical(&mut rng, n, extra);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        (g, perm)
    })
}

/// Vertex connectivity by trying every vertex subset.
fn connectivity_by_subsets(g: &Graph) -> usize {
    let n = g.order();
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k >= best || n - k < 2 {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
        let index = |v: usize| keep.iter().position(|&w| w == v);
        let edges: Vec<_> = g
            .edges()
            .into_iter()
            .filter_map(|(u, v)| Some((index(u)?, index(v)?)))
            .collect();
        if !connected(keep.len(), &edges) {
            best = k;
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariants_survive_relabelling((g, perm) in chemical_with_perm()) {
        let h = g.relabel(&perm);
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
        prop_assert_eq!(nullity(&g), nullity(&h));
        prop_assert_eq!(g.degree_signature().unwrap(), h.degree_signature().unwrap());
        prop_assert_eq!(is_planar(&g), is_planar(&h));
        prop_assert_eq!(verify_nut(&g).is_nut, verify_nut(&h).is_nut);
    }

    #[test]
    fn degree_sum_and_size((g, _) in chemical_with_perm()) {
        let s = g.degree_signature().unwrap();
        prop_assert_eq!(s.order(), g.order());
        prop_assert_eq!(3 * s.v3 + 2 * s.v2 + s.v1, 2 * g.size());
    }

    #[test]
    fn formats_round_trip((g, _) in chemical_with_perm()) {
        prop_assert_eq!(&parse_edge_list(&write_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_graph6(&write_graph6(&g)).unwrap(), &g);
        let canon = g.canonical_form().unwrap();
        prop_assert_eq!(canon.to_graph().canonical_form().unwrap(), canon);
    }

    #[test]
    fn bridges_match_deletion((g, _) in chemical_with_perm()) {
        let mut found = g.bridges().unwrap();
        found.sort();
        let mut expected = bridges_by_deletion(&g);
        expected.sort();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn connectivity_matches_subsets((g, _) in chemical_with_perm()) {
        prop_assume!(g.order() <= 10);
        prop_assert_eq!(g.connectivity(), connectivity_by_subsets(&g));
    }

    #[test]
    fn planarity_witness_is_valid((g, _) in chemical_with_perm()) {
        let v = test_planarity(&g).unwrap();
        prop_assert!(v.witness_checks(&g));
        prop_assert_eq!(v.planar, is_planar(&g));
    }

    #[test]
    fn construction_signature_deltas((g, _) in chemical_with_perm(), pick in any::<prop::sample::Index>()) {
        let sig = g.degree_signature().unwrap();
        let edges = g.edges();
        let (u, v) = edges[pick.index(edges.len())];
        let vertex = pick.index(g.order());
        let mut steps = vec![ConstructionStep::Subdivide4 { u, v }];
        if g.degree(vertex) >= 2 {
            steps.push(ConstructionStep::Fowler { vertex });
        }
        if g.is_bridge(u, v).unwrap() {
            steps.push(ConstructionStep::Bridge { u, v });
        }
        for step in steps {
            let h = step.apply(&g).unwrap();
            let hs = h.degree_signature().unwrap();
            let (d3, d2) = step.signature_delta(&g);
            prop_assert_eq!((hs.v3, hs.v2, hs.v1), (sig.v3 + d3, sig.v2 + d2, sig.v1));
            prop_assert_eq!(h.order(), g.order() + d3 + d2);
            prop_assert_eq!(2 * h.size(), 2 * g.size() + 3 * d3 + 2 * d2);
        }
    }
}

#[test]
fn connected_cubic_counts() {
    for (n, count) in [(4, 1), (6, 2), (8, 5), (10, 19), (12, 85)] {
        let graphs = enumerate_leafless(pair(n, 0), 14).unwrap();
        assert_eq!(graphs.len(), count, "cubic graphs on {n} vertices");
        let mut classes = Classes::default();
        assert!(graphs.into_iter().all(|g| classes.insert(g)));
    }
}

#[test]
fn enumerated_nut_graphs_are_leafless_and_not_bipartite() {
    for (v3, v2) in [(2, 7), (8, 3), (12, 0), (4, 10), (6, 7)] {
        for g in enumerate_nuts(pair(v3, v2), 14).unwrap() {
            assert!(g.is_leafless() && g.is_chemical() && g.is_connected());
            assert!(!g.is_bipartite());
            assert!(verify_nut(&g).is_nut);
        }
    }
}

#[test]
fn kuratowski_graphs() {
    let k5 = Graph::complete(5);
    let k33 = Graph::complete_bipartite(3, 3);
    assert_eq!(classify_kuratowski(5, &k5.edges()), Some(KuratowskiKind::K5));
    assert_eq!(classify_kuratowski(6, &k33.edges()), Some(KuratowskiKind::K33));
    let petersen = Graph::from_edges(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
        ],
    )
    .unwrap();
    for g in [k5, k33, petersen] {
        let v = test_planarity(&g).unwrap();
        assert!(!v.planar);
        assert!(matches!(v.witness, Witness::Kuratowski(_)));
        assert!(v.witness_checks(&g));
    }
    let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
    let v = test_planarity(&prism).unwrap();
    assert!(v.planar && matches!(v.witness, Witness::Embedding(_)) && v.witness_checks(&prism));
}
