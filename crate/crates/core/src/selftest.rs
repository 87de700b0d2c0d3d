//! Oracle-equivalence suites: fast routines compared against definitional
//! ones over every small connected graph.

use serde::Serialize;

use crate::classify::{connected_within, is_matching_covered};
use crate::enumerate::{for_each_connected_graph, to_multigraph};
use crate::graph::{EdgeId, Multigraph};
use crate::matching::{
    enumerate_perfect_matchings, has_perfect_matching, is_allowed, is_n_extendable, max_matching, max_tutte_deficiency,
    Matching,
};
use crate::tightcut::{is_brace, is_tight_cut};
use crate::vset::VertexSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub graphs: usize,
    pub comparisons: usize,
    pub disagreements: usize,
    /// Description of the first disagreement, if any.
    pub first: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn compare(&mut self, agree: bool, describe: impl FnOnce() -> String) {
        self.comparisons += 1;
        if !agree {
            self.disagreements += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.disagreements == 0
    }
}

/// Implementations under test for the matching suite.
pub struct MatchingImpl {
    pub has_perfect_matching: fn(&Multigraph) -> bool,
    pub is_allowed: fn(&Multigraph, EdgeId) -> bool,
}

impl Default for MatchingImpl {
    fn default() -> Self {
        MatchingImpl {
            has_perfect_matching,
            is_allowed: |g, e| is_allowed(g, e).unwrap_or(false),
        }
    }
}

fn label(g: &Multigraph) -> String {
    format!("{:?}", g.sorted_pairs())
}

fn in_some(pms: &[Matching], e: EdgeId) -> bool {
    pms.iter().any(|m| m.contains(e))
}

/// Blossom perfect matching existence and edge allowedness against the full
/// list of perfect matchings.
pub fn matching_suite(graphs: &[Multigraph], imp: &MatchingImpl) -> SuiteReport {
    let mut r = SuiteReport::new("blossom-vs-enumeration");
    for g in graphs {
        r.graphs += 1;
        let pms = enumerate_perfect_matchings(g).expect("graph within the enumeration bound");
        let has = (imp.has_perfect_matching)(g);
        r.compare(has == !pms.is_empty(), || format!("perfect matching existence on {}", label(g)));
        let m = max_matching(g);
        r.compare(m.is_valid_in(g) && m.is_perfect(g) == !pms.is_empty(), || {
            format!("maximum matching on {}", label(g))
        });
        for e in g.edge_ids() {
            let fast = (imp.is_allowed)(g, e);
            r.compare(fast == in_some(&pms, e), || format!("allowedness of edge {} on {}", e.0, label(g)));
        }
        let mc = !pms.is_empty() && g.is_connected() && g.edge_ids().all(|e| in_some(&pms, e));
        r.compare(is_matching_covered(g) == mc, || format!("matching covered on {}", label(g)));
    }
    r
}

/// The tight cut tester against counting cut edges in every perfect matching,
/// over every proper shore.
pub fn tight_cut_suite(graphs: &[Multigraph]) -> SuiteReport {
    let mut r = SuiteReport::new("tight-cut-vs-definition");
    for g in graphs {
        let n = g.vertex_count();
        let pms = enumerate_perfect_matchings(g).expect("graph within the enumeration bound");
        if pms.is_empty() || n < 2 {
            continue;
        }
        r.graphs += 1;
        // shores containing vertex 0
        for rest in 0u64..(1u64 << (n - 1)) {
            let x = VertexSet(rest << 1 | 1);
            if x.len() == n {
                continue;
            }
            let cut: Vec<EdgeId> = g.cut_edges(x).map(|e| e.id).collect();
            let definitional = pms
                .iter()
                .all(|m| m.edges.iter().filter(|e| cut.contains(e)).count() == 1);
            let fast = is_tight_cut(g, x).unwrap_or(false);
            r.compare(fast == definitional, || format!("shore {:?} on {}", x.to_vec(), label(g)));
        }
    }
    r
}

/// Brace recognition against 2-extendability for bipartite graphs.
pub fn brace_suite(graphs: &[Multigraph]) -> SuiteReport {
    let mut r = SuiteReport::new("brace-vs-2-extendable");
    for g in graphs {
        if !g.is_bipartite() || g.vertex_count() < 6 {
            continue;
        }
        r.graphs += 1;
        r.compare(is_brace(g) == is_n_extendable(g, 2), || format!("brace on {}", label(g)));
    }
    r
}

/// Tutte–Berge: twice the maximum matching size equals `|V|` minus the
/// largest value of `o(G - S) - |S|`.
pub fn tutte_suite(graphs: &[Multigraph]) -> SuiteReport {
    let mut r = SuiteReport::new("tutte-berge");
    for g in graphs {
        r.graphs += 1;
        let def = max_tutte_deficiency(g).expect("graph within the deficiency bound");
        let nu = max_matching(g).len() as i64;
        r.compare(2 * nu == g.vertex_count() as i64 - def, || format!("deficiency {def} on {}", label(g)));
        let pm_by_tutte = def <= 0;
        r.compare(pm_by_tutte == has_perfect_matching(g), || format!("Tutte condition on {}", label(g)));
    }
    r
}

/// Every connected graph with `1..=max_n` vertices.
pub fn connected_graphs(max_n: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for_each_connected_graph(n, |n, adj| out.push(to_multigraph(n, adj)));
    }
    out
}

/// Every connected bipartite graph with `min_n..=max_n` vertices.
pub fn connected_bipartite_graphs(min_n: usize, max_n: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in min_n..=max_n {
        for_each_connected_graph(n, |n, adj| {
            if two_colourable(n, adj) {
                out.push(to_multigraph(n, adj));
            }
        });
    }
    out
}

fn two_colourable(n: usize, adj: &[u64]) -> bool {
    debug_assert!(connected_within(adj, VertexSet::full(n).bits()));
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for u in VertexSet(adj[v]) {
            if side[u] == u8::MAX {
                side[u] = 1 - side[v];
                stack.push(u);
            } else if side[u] == side[v] {
                return false;
            }
        }
    }
    true
}

/// Runs every suite: matching, tight cut and Tutte–Berge on connected graphs
/// up to `max_n` vertices, brace recognition on connected bipartite graphs
/// with 6 to `brace_max_n` vertices.
pub fn run_all(max_n: usize, brace_max_n: usize) -> Vec<SuiteReport> {
    let graphs = connected_graphs(max_n);
    let bipartite = connected_bipartite_graphs(6, brace_max_n);
    vec![
        matching_suite(&graphs, &MatchingImpl::default()),
        tight_cut_suite(&graphs),
        tutte_suite(&graphs),
        brace_suite(&bipartite),
    ]
}
