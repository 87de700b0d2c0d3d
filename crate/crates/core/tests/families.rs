use mcgraph::classify::{is_matching_covered, is_minimal_mc, removable_classes, removable_edges, RemovableClass};
use mcgraph::enumerate::{for_each_connected_graph, to_multigraph};
use mcgraph::families::{gen_family, Family};
use mcgraph::matching::enumerate_perfect_matchings;
use mcgraph::tightcut::{is_brick, is_near_bipartite, is_tight_cut, tight_cut_decomposition};
use mcgraph::{are_isomorphic, EdgeId, Multigraph, VertexSet};

fn fam(f: Family, n: Option<usize>) -> Multigraph {
    gen_family(f, n).unwrap()
}

/// Removable edges straight from the definition: `G - e` connected and every
/// other edge in a perfect matching of `G - e`.
fn removable_by_enumeration(g: &Multigraph) -> Vec<EdgeId> {
    g.edge_ids()
        .filter(|&e| {
            let h = g.delete_edge(e).unwrap();
            let pms = enumerate_perfect_matchings(&h).unwrap();
            h.is_connected() && h.edge_ids().all(|f| pms.iter().any(|m| m.contains(f)))
        })
        .collect()
}

fn has_nonadjacent_pair(g: &Multigraph, ids: &[EdgeId]) -> bool {
    ids.iter().enumerate().any(|(i, &a)| {
        ids[i + 1..]
            .iter()
            .any(|&b| !g.edge(a).unwrap().is_adjacent_to(g.edge(b).unwrap()))
    })
}

#[test]
fn r8_is_a_cubic_near_bipartite_brick_with_one_removable_edge() {
    let r8 = fam(Family::R8, None);
    assert_eq!(r8.vertex_count(), 8);
    assert!(r8.is_simple());
    assert!((0..8).all(|v| r8.degree(v) == 3));
    assert!(is_brick(&r8));
    assert!(is_near_bipartite(&r8).unwrap().is_some());
    let removable = removable_by_enumeration(&r8);
    assert_eq!(removable, removable_edges(&r8).unwrap());
    assert_eq!(removable.len(), 1);
    let e = r8.edge(removable[0]).unwrap();
    assert_eq!((e.u, e.v), (3, 4));
    assert!(!has_nonadjacent_pair(&r8, &removable));
}

#[test]
fn r8_is_the_only_cubic_graph_of_its_kind_on_eight_vertices() {
    let mut matches = Vec::new();
    for_each_connected_graph(8, |n, adj| {
        let g = to_multigraph(n, adj);
        if (0..n).any(|v| g.degree(v) != 3) || !is_brick(&g) {
            return;
        }
        if is_near_bipartite(&g).unwrap().is_none() {
            return;
        }
        if !has_nonadjacent_pair(&g, &removable_edges(&g).unwrap()) {
            matches.push(g);
        }
    });
    assert_eq!(matches.len(), 1);
    assert!(are_isomorphic(&matches[0], &fam(Family::R8, None)).unwrap());
}

#[test]
fn c4_plus_shape() {
    let c = fam(Family::C4Plus, None);
    assert!(is_matching_covered(&c));
    assert_eq!(c.degree(0), 4);
    assert_eq!(c.count_degree(2), 1);
    assert_eq!(c.degree(2), 2);
    assert_eq!(c.multiplicity(0, 1), 2);
    assert_eq!(c.multiplicity(0, 3), 2);
}

#[test]
fn gn_and_hn_are_minimal() {
    for n in 3..=6 {
        let g = fam(Family::Gn, Some(n));
        assert!(is_minimal_mc(&g));
        assert!(removable_by_enumeration(&g).is_empty());
        assert_eq!(g.k_lines(3).len(), 2);
        assert_eq!(g.count_degree(3), 4);

        let h = fam(Family::Hn, Some(n));
        assert!(is_minimal_mc(&h));
        assert!(removable_by_enumeration(&h).is_empty());
        assert_eq!(h.count_degree(2), 1);
        assert!(h.k_lines(2).is_empty());
        // the three vertices contributed by C4+
        let a = VertexSet::from_slice(&[2 * n - 1, 2 * n, 2 * n + 1]);
        assert!(is_tight_cut(&h, a).unwrap());
    }
}

#[test]
fn gn_decomposes_into_k4_bricks() {
    let k4 = fam(Family::K4, None);
    for n in 3..=6 {
        let d = tight_cut_decomposition(&fam(Family::Gn, Some(n)), 0).unwrap();
        assert_eq!(d.brick_count(), n - 1);
        assert_eq!(d.brace_count(), 0);
        for leaf in &d.leaves {
            assert!(are_isomorphic(&leaf.graph.underlying_simple(), &k4).unwrap());
        }
    }
}

#[test]
fn exception_graphs_have_the_stated_class_counts() {
    let k4 = fam(Family::K4, None);
    let classes = removable_classes(&k4).unwrap();
    assert_eq!(classes.len(), 3);
    assert!(classes.iter().all(|c| matches!(c, RemovableClass::Doubleton { .. })));
    assert!(removable_by_enumeration(&k4).is_empty());

    let prism = fam(Family::Prism, None);
    assert!(removable_by_enumeration(&prism).is_empty());
    assert!(removable_classes(&prism).unwrap().len() >= 3);
}
