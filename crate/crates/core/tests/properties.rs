use proptest::prelude::*;

use mcgraph::canon::certificate;
use mcgraph::classify::{barriers_exhaustive, is_matching_covered};
use mcgraph::codec::{emit_graph, parse_graph, Format};
use mcgraph::matching::{enumerate_perfect_matchings, has_perfect_matching_without, PmOracle};
use mcgraph::tightcut::is_tight_cut;
use mcgraph::{are_isomorphic, build_graph, EdgeId, Multigraph, VertexSet};

fn multigraph_on(n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    prop::collection::vec((0..n, 1..n), 0..=max_m).prop_map(move |raw| {
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
        build_graph(n, &pairs).unwrap()
    })
}

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| multigraph_on(n, max_m))
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    multigraph(max_n, 24).prop_map(|g| g.underlying_simple())
}

fn relabel(g: &Multigraph, perm: &[usize]) -> Multigraph {
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (perm[e.u], perm[e.v])).collect();
    build_graph(g.vertex_count(), &pairs).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_is_twice_edge_count(g in multigraph(12, 30)) {
        let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn underlying_simple_is_idempotent(g in multigraph(10, 30)) {
        let s = g.underlying_simple();
        prop_assert!(s.is_simple());
        prop_assert!(s.same_structure(&s.underlying_simple()));
        prop_assert_eq!(s.adjacency(), g.adjacency());
    }

    #[test]
    fn cut_is_symmetric(g in multigraph(10, 25), bits in any::<u64>()) {
        let n = g.vertex_count();
        let x = VertexSet(bits & VertexSet::full(n).bits());
        prop_assume!(!x.is_empty() && x.len() < n);
        let a: Vec<EdgeId> = g.cut_edges(x).map(|e| e.id).collect();
        let b: Vec<EdgeId> = g.cut_edges(x.complement(n)).map(|e| e.id).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn contraction_keeps_edge_ids(g in multigraph(10, 25), bits in any::<u64>()) {
        let n = g.vertex_count();
        let x = VertexSet(bits & VertexSet::full(n).bits());
        prop_assume!(x.len() >= 2 && x.len() < n);
        let c = g.contract(x).unwrap();
        prop_assert_eq!(c.graph.vertex_count(), n - x.len() + 1);
        let inside = g.edges_within(x).count();
        prop_assert_eq!(c.graph.edge_count(), g.edge_count() - inside);
        for e in c.graph.edges() {
            let old = g.edge(e.id).unwrap();
            prop_assert!(!(x.contains(old.u) && x.contains(old.v)));
            let mut ends = [c.vertex_map[old.u], c.vertex_map[old.v]];
            ends.sort_unstable();
            prop_assert_eq!((e.u, e.v), (ends[0], ends[1]));
        }
        prop_assert_eq!(c.graph.degree(c.contracted), g.cut_edges(x).count());
    }

    #[test]
    fn isomorphism_is_relabeling_invariant(
        (g, p, q) in multigraph(9, 20).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), permutation(n), permutation(n))
        })
    ) {
        let h = relabel(&g, &p);
        let k = relabel(&h, &q);
        prop_assert!(are_isomorphic(&g, &g).unwrap());
        prop_assert!(are_isomorphic(&g, &h).unwrap());
        prop_assert!(are_isomorphic(&h, &g).unwrap());
        prop_assert!(are_isomorphic(&g, &k).unwrap());
        if g.is_simple() {
            prop_assert_eq!(certificate(&g).unwrap(), certificate(&h).unwrap());
        }
    }

    #[test]
    fn certificates_separate_non_isomorphic_graphs(
        (g, h) in (4usize..=7).prop_flat_map(|n| (multigraph_on(n, 14), multigraph_on(n, 14)))
    ) {
        let (g, h) = (g.underlying_simple(), h.underlying_simple());
        let same = certificate(&g).unwrap() == certificate(&h).unwrap();
        prop_assert_eq!(same, are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn codecs_round_trip(g in multigraph(20, 40)) {
        for format in [Format::Sparse6, Format::EdgeList] {
            let bytes = emit_graph(&g, format).unwrap();
            let back = parse_graph(&bytes, format).unwrap();
            prop_assert!(back.same_structure(&g), "{:?}", format);
        }
        let s = g.underlying_simple();
        let bytes = emit_graph(&s, Format::Graph6).unwrap();
        prop_assert!(parse_graph(&bytes, Format::Graph6).unwrap().same_structure(&s));
    }

    #[test]
    fn subset_table_agrees_with_blossom(g in simple_graph(10), bits in any::<u64>()) {
        let n = g.vertex_count();
        let removed = VertexSet(bits & VertexSet::full(n).bits());
        let oracle = PmOracle::new(&g);
        prop_assert_eq!(oracle.without(removed), has_perfect_matching_without(&g, removed));
    }

    #[test]
    fn tight_cut_test_matches_definition(g in simple_graph(8), bits in any::<u64>()) {
        let n = g.vertex_count();
        let x = VertexSet(bits & VertexSet::full(n).bits());
        prop_assume!(!x.is_empty() && x.len() < n);
        let pms = enumerate_perfect_matchings(&g).unwrap();
        prop_assume!(!pms.is_empty());
        let cut: Vec<EdgeId> = g.cut_edges(x).map(|e| e.id).collect();
        let definitional = pms.iter().all(|m| m.edges.iter().filter(|e| cut.contains(e)).count() == 1);
        prop_assert_eq!(is_tight_cut(&g, x).unwrap(), definitional);
    }

    #[test]
    fn barriers_of_matching_covered_graphs_are_independent(g in simple_graph(10)) {
        prop_assume!(is_matching_covered(&g));
        let n = g.vertex_count();
        for b in barriers_exhaustive(&g, false).unwrap() {
            prop_assert!(b.iter().all(|v| g.neighbors(v).is_disjoint(b)));
            prop_assert!(g.components_within(b.complement(n)).iter().all(|c| c.len() % 2 == 1));
        }
    }
}
