//! Registry of structural checks. Each check has a hypothesis filter and a
//! conclusion; running it on a graph yields pass, fail or not-applicable
//! together with a witness payload.
//!
//! Checks that share work on the same graph go through [`GraphFacts`], which
//! computes each derived property at most once.

use std::cell::OnceCell;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    barrier_search, find_cycle, first_removable_edge, is_matching_covered, removable_classes_of_mc,
    removable_edges_of_mc, removable_in_mc, RemovableClass,
};
use crate::error::{Error, Result};
use crate::families::{complete_bipartite, default_splice_map, gen_family, splice, Family};
use crate::graph::{are_isomorphic, Edge, EdgeId, Multigraph, ISOMORPHISM_BOUND};
use crate::matching::{PmOracle, ENUMERATION_BOUND};
use crate::tightcut::{
    all_nontrivial_tight_shores, barrier_cuts, cut_contractions, is_brace, is_brick, near_bipartite_pair,
    two_separation_cuts, Provenance, TightCut, DECOMPOSITION_SCAN_BOUND,
};
use crate::vset::VertexSet;

/// Largest graph for which checks needing every barrier are evaluated.
pub const BARRIER_CHECK_BOUND: usize = ENUMERATION_BOUND + 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub note: String,
}

/// One registry entry.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub conclusion: &'static str,
}

struct Outcome {
    verdict: Verdict,
    witness: Value,
    note: String,
}

fn na(reason: &str) -> Outcome {
    Outcome {
        verdict: Verdict::NotApplicable,
        witness: Value::Null,
        note: reason.to_string(),
    }
}

fn decide(ok: bool, witness: Value, fail_note: &str) -> Outcome {
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        witness,
        note: if ok { String::new() } else { fail_note.to_string() },
    }
}

// -------------------------------------------------------------------- facts

/// Lazily computed properties of one graph.
pub struct GraphFacts<'a> {
    g: &'a Multigraph,
    oracle: OnceCell<PmOracle>,
    coloring: OnceCell<Option<(VertexSet, VertexSet)>>,
    mc: OnceCell<bool>,
    minimal: OnceCell<bool>,
    removable: OnceCell<Vec<EdgeId>>,
    classes: OnceCell<Vec<RemovableClass>>,
    bicritical: OnceCell<bool>,
    brick: OnceCell<bool>,
    barriers: OnceCell<Vec<VertexSet>>,
    tight_shores: OnceCell<Vec<VertexSet>>,
    two_sep_cuts: OnceCell<Vec<TightCut>>,
    minimal_brace: OnceCell<bool>,
}

impl<'a> GraphFacts<'a> {
    pub fn new(g: &'a Multigraph) -> Self {
        GraphFacts {
            g,
            oracle: OnceCell::new(),
            coloring: OnceCell::new(),
            mc: OnceCell::new(),
            minimal: OnceCell::new(),
            removable: OnceCell::new(),
            classes: OnceCell::new(),
            bicritical: OnceCell::new(),
            brick: OnceCell::new(),
            barriers: OnceCell::new(),
            tight_shores: OnceCell::new(),
            two_sep_cuts: OnceCell::new(),
            minimal_brace: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Multigraph {
        self.g
    }

    fn n(&self) -> usize {
        self.g.vertex_count()
    }

    pub fn oracle(&self) -> &PmOracle {
        self.oracle.get_or_init(|| PmOracle::new(self.g))
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.n() % 2 == 0 && self.oracle().has_perfect_matching()
    }

    pub fn coloring(&self) -> Option<(VertexSet, VertexSet)> {
        *self.coloring.get_or_init(|| self.g.two_coloring())
    }

    pub fn is_bipartite(&self) -> bool {
        self.coloring().is_some()
    }

    pub fn is_mc(&self) -> bool {
        *self.mc.get_or_init(|| {
            let n = self.n();
            n >= 2
                && n % 2 == 0
                && self.g.is_connected()
                && crate::classify::mc_with_oracle(n, self.g.adjacency(), self.oracle())
        })
    }

    /// Removable edges; empty unless the graph is matching covered.
    pub fn removable(&self) -> &[EdgeId] {
        self.removable.get_or_init(|| {
            if self.is_mc() {
                removable_edges_of_mc(self.g)
            } else {
                Vec::new()
            }
        })
    }

    pub fn is_minimal_mc(&self) -> bool {
        *self.minimal.get_or_init(|| {
            if !self.is_mc() {
                return false;
            }
            match self.removable.get() {
                Some(r) => r.is_empty(),
                None => first_removable_edge(self.g).is_none(),
            }
        })
    }

    /// The removable edges when there are at most `k` of them; stops early
    /// otherwise.
    pub fn removable_at_most(&self, k: usize) -> Option<Vec<EdgeId>> {
        if let Some(r) = self.removable.get() {
            return (r.len() <= k).then(|| r.clone());
        }
        if !self.is_mc() {
            return Some(Vec::new());
        }
        let mut found = Vec::new();
        for e in self.g.edges() {
            if removable_in_mc(self.g, e.u, e.v) {
                found.push(e.id);
                if found.len() > k {
                    return None;
                }
            }
        }
        Some(found)
    }

    /// The removable edges when they all share a vertex; stops early
    /// otherwise.
    pub fn removable_with_common_vertex(&self) -> Option<Vec<EdgeId>> {
        if let Some(r) = self.removable.get() {
            return (!common_vertices(self.g, r).is_empty()).then(|| r.clone());
        }
        if !self.is_mc() {
            return Some(Vec::new());
        }
        let mut found = Vec::new();
        let mut common = self.g.vertices();
        for e in self.g.edges() {
            if removable_in_mc(self.g, e.u, e.v) {
                found.push(e.id);
                common = common.intersection(e.ends());
                if common.is_empty() {
                    return None;
                }
            }
        }
        Some(found)
    }

    pub fn removable_classes(&self) -> &[RemovableClass] {
        self.classes.get_or_init(|| {
            if self.is_mc() {
                removable_classes_of_mc(self.g)
            } else {
                Vec::new()
            }
        })
    }

    pub fn is_bicritical(&self) -> bool {
        *self.bicritical.get_or_init(|| {
            // deleting two neighbours of a vertex with fewer than three isolates it
            (0..self.n()).all(|v| self.g.neighbors(v).len() >= 3)
                && crate::classify::bicritical_with(self.n(), self.oracle())
        })
    }

    pub fn is_brick(&self) -> bool {
        *self.brick.get_or_init(|| self.is_bicritical() && self.g.is_k_connected(3))
    }

    /// Every nonempty barrier, without independence pruning. Requires a
    /// perfect matching and at most [`BARRIER_CHECK_BOUND`] vertices.
    pub fn barriers(&self) -> &[VertexSet] {
        self.barriers.get_or_init(|| barrier_search(self.g, false, false))
    }

    /// Every nontrivial tight shore of a matching covered graph: by exhaustive
    /// scan up to [`DECOMPOSITION_SCAN_BOUND`] vertices, otherwise the barrier
    /// and 2-separation cuts.
    pub fn tight_shores(&self) -> &[VertexSet] {
        self.tight_shores.get_or_init(|| {
            let n = self.n();
            if n <= DECOMPOSITION_SCAN_BOUND {
                return all_nontrivial_tight_shores(self.g).unwrap_or_default();
            }
            let mut out: Vec<VertexSet> = barrier_cuts(self.g)
                .unwrap_or_default()
                .into_iter()
                .chain(self.two_sep_cuts().iter().cloned())
                .filter(|c| c.nontrivial)
                .map(|c| c.cut.normalized_shore(n))
                .collect();
            out.sort_unstable_by_key(|s| (s.len(), s.bits()));
            out.dedup();
            out
        })
    }

    /// Every 2-separation cut of a matching covered graph.
    pub fn two_sep_cuts(&self) -> &[TightCut] {
        self.two_sep_cuts
            .get_or_init(|| two_separation_cuts(self.g).unwrap_or_default())
    }

    pub fn is_minimal_brace(&self) -> bool {
        *self.minimal_brace.get_or_init(|| is_minimal_brace(self.g))
    }
}

/// A brace none of whose single-edge deletions is a brace.
pub fn is_minimal_brace(g: &Multigraph) -> bool {
    is_brace(g) && g.edge_ids().all(|e| g.delete_edge(e).map(|h| !is_brace(&h)).unwrap_or(false))
}

// -------------------------------------------------------------------- helpers

fn edge_json(g: &Multigraph, id: EdgeId) -> Value {
    match g.edge(id) {
        Ok(e) => json!([id.0, e.u, e.v]),
        Err(_) => json!([id.0]),
    }
}

fn edges_json(g: &Multigraph, ids: &[EdgeId]) -> Value {
    Value::Array(ids.iter().map(|&e| edge_json(g, e)).collect())
}

fn edge_of(g: &Multigraph, id: EdgeId) -> Edge {
    *g.edge(id).expect("edge id from the same graph")
}

/// The first pair (in id order) of edges from `ids` sharing no endpoint.
fn nonadjacent_pair(g: &Multigraph, ids: &[EdgeId]) -> Option<(EdgeId, EdgeId)> {
    for (i, &a) in ids.iter().enumerate() {
        let ea = edge_of(g, a);
        for &b in &ids[i + 1..] {
            if !ea.is_adjacent_to(&edge_of(g, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Some member of `ids` sharing no endpoint with `f`.
fn avoiding(g: &Multigraph, ids: &[EdgeId], f: &Edge) -> Option<EdgeId> {
    ids.iter().copied().find(|&t| !edge_of(g, t).is_adjacent_to(f))
}

fn isomorphic_to(g: &Multigraph, family: Family) -> bool {
    let h = gen_family(family, None).expect("fixed family");
    g.vertex_count() == h.vertex_count()
        && g.vertex_count() <= ISOMORPHISM_BOUND
        && are_isomorphic(g, &h).unwrap_or(false)
}

/// Vertices incident with every edge in `ids` (all vertices when `ids` is empty).
fn common_vertices(g: &Multigraph, ids: &[EdgeId]) -> VertexSet {
    ids.iter()
        .fold(g.vertices(), |acc, &e| acc.intersection(edge_of(g, e).ends()))
}

fn vs_json(s: VertexSet) -> Value {
    json!(s.to_vec())
}

// -------------------------------------------------------------------- registry

struct Check {
    info: CheckInfo,
    run: fn(&GraphFacts) -> Outcome,
}

const fn info(id: &'static str, hypothesis: &'static str, conclusion: &'static str) -> CheckInfo {
    CheckInfo {
        id,
        hypothesis,
        conclusion,
    }
}

static CHECKS: [Check; 23] = [
    Check {
        info: info(
            "bip-2lines",
            "minimal matching covered bipartite graph with at least 4 vertices",
            "number of 2-lines is at least floor((|V| + 15) / 6)",
        ),
        run: bip_2lines,
    },
    Check {
        info: info(
            "main-3lines",
            "minimal matching covered graph with at least 4 vertices and minimum degree at least 3",
            "two 3-lines sharing no endpoint, and at least 4 cubic vertices",
        ),
        run: main_3lines,
    },
    Check {
        info: info(
            "two-or-three",
            "minimal matching covered graph with at least 4 vertices",
            "two edges sharing no endpoint, each a 2-line or a 3-line",
        ),
        run: two_or_three,
    },
    Check {
        info: info(
            "delta-2-or-3",
            "minimal matching covered graph other than K2",
            "minimum degree is 2 or 3",
        ),
        run: delta_2_or_3,
    },
    Check {
        info: info(
            "nonre-forest",
            "bipartite matching covered graph with at least 4 vertices and minimum degree at least 3",
            "the nonremovable edges form a forest",
        ),
        run: nonre_forest,
    },
    Check {
        info: info(
            "nonre-two-per-side",
            "bipartite matching covered graph with at least 4 vertices and minimum degree at least 3",
            "each colour class has at least two vertices incident with at most two nonremovable edges",
        ),
        run: nonre_two_per_side,
    },
    Check {
        info: info(
            "brick-classes",
            "brick",
            "at least Δ removable classes; unless the graph is K4 or the triangular prism, at least Δ - 2 removable edges",
        ),
        run: brick_classes,
    },
    Check {
        info: info(
            "nearbi-nonadj",
            "simple near-bipartite brick not isomorphic to K4, the triangular prism or R8",
            "two removable edges sharing no endpoint",
        ),
        run: nearbi_nonadj,
    },
    Check {
        info: info(
            "wl-brick-hub",
            "wheel-like brick with at least 6 vertices",
            "every edge at a hub is removable",
        ),
        run: wl_brick_hub,
    },
    Check {
        info: info(
            "brick-cubic-re",
            "brick whose removable edges all meet a vertex h, whose underlying simple graph has a removable doubleton, and whose 3-lines all meet h",
            "4 vertices, and h has parallel edges to at least two neighbours",
        ),
        run: brick_cubic_re,
    },
    Check {
        info: info(
            "bicrit-nore-cubic",
            "bicritical graph without removable edges",
            "at least 4 cubic vertices",
        ),
        run: bicrit_nore_cubic,
    },
    Check {
        info: info(
            "bicrit-nore-3lines",
            "bicritical graph without removable edges",
            "at least two 3-lines, and for every edge f a 3-line sharing no endpoint with f",
        ),
        run: bicrit_nore_3lines,
    },
    Check {
        info: info(
            "wl-bicrit",
            "bicritical graph with a removable edge whose removable edges all meet a vertex h",
            "h meets at least 3 removable edges, or some 3-line avoids h",
        ),
        run: wl_bicrit,
    },
    Check {
        info: info(
            "one-re-3line",
            "matching covered graph with minimum degree at least 3 and at most one removable edge",
            "a 3-line sharing no endpoint with the removable edge (with every edge, when none is removable)",
        ),
        run: one_re_3line,
    },
    Check {
        info: info(
            "tight-contract-mc",
            "matching covered graph with a nontrivial tight cut",
            "both contractions of every nontrivial tight cut are matching covered",
        ),
        run: tight_contract_mc,
    },
    Check {
        info: info(
            "barrier-indep",
            "matching covered graph",
            "every nonempty barrier is independent and leaves no even component",
        ),
        run: barrier_indep,
    },
    Check {
        info: info(
            "maxbarrier-fc",
            "graph with a perfect matching",
            "for every maximal barrier B, each component of G - B is factor-critical or a single vertex",
        ),
        run: maxbarrier_fc,
    },
    Check {
        info: info(
            "splice-mc",
            "matching covered graph, spliced at a vertex of minimum degree with a copy of itself and with K(d,d)",
            "every splice is matching covered",
        ),
        run: splice_mc,
    },
    Check {
        info: info(
            "twosep-bicritical",
            "bicritical graph with a 2-separation",
            "both contractions of every 2-separation cut are bicritical",
        ),
        run: twosep_bicritical,
    },
    Check {
        info: info(
            "twosep-degree",
            "bicritical graph with a 2-separation",
            "each vertex s of a 2-separation S has at least two neighbours in X - S and in the complement of X minus S, for every associated cut ∂(X)",
        ),
        run: twosep_degree,
    },
    Check {
        info: info(
            "twosep-brick-shores",
            "bicritical graph that is not 3-connected",
            "2-separation cut shores Y and Y' with Y' inside the complement of Y such that both G/Ȳ and G/Ȳ' are bricks",
        ),
        run: twosep_brick_shores,
    },
    Check {
        info: info(
            "conj-minimal-brace",
            "minimal brace with at least 6 vertices",
            "a 3-line exists",
        ),
        run: conj_minimal_brace,
    },
    Check {
        info: info(
            "lou-cubic",
            "minimal brace with at least 6 vertices",
            "at least ceil((2|V| + 2) / 5) cubic vertices",
        ),
        run: lou_cubic,
    },
];

/// Every registered check, in stable order.
pub fn list_checks() -> Vec<CheckInfo> {
    CHECKS.iter().map(|c| c.info).collect()
}

fn lookup(id: &str) -> Result<&'static Check> {
    CHECKS.iter().find(|c| c.info.id == id).ok_or_else(|| Error::UnknownCheck {
        id: id.to_string(),
        known: CHECKS.iter().map(|c| c.info.id).collect::<Vec<_>>().join(", "),
    })
}

/// Validates a list of ids, expanding `all` to the full registry.
pub fn resolve_checks(ids: &[&str]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for &id in ids {
        if id == "all" {
            out.extend(CHECKS.iter().map(|c| c.info.id));
        } else {
            out.push(lookup(id)?.info.id);
        }
    }
    Ok(out)
}

pub fn run_check(check_id: &str, g: &Multigraph) -> Result<CheckResult> {
    run_check_with(check_id, &GraphFacts::new(g))
}

/// Runs a check reusing facts already computed for the graph.
pub fn run_check_with(check_id: &str, facts: &GraphFacts) -> Result<CheckResult> {
    let check = lookup(check_id)?;
    let o = (check.run)(facts);
    Ok(CheckResult {
        check_id: check.info.id.to_string(),
        verdict: o.verdict,
        witness: o.witness,
        note: o.note,
    })
}

// -------------------------------------------------------------------- checks

fn bip_2lines(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    let n = g.vertex_count();
    if n < 4 || !f.is_bipartite() || !f.is_minimal_mc() {
        return na("not a minimal matching covered bipartite graph on at least 4 vertices");
    }
    let lines = g.k_lines(2);
    let bound = (n + 15) / 6;
    let ceiling = (n + 15).div_ceil(6);
    let ok = lines.len() >= bound;
    decide(
        ok,
        json!({
            "two_lines": edges_json(g, &lines),
            "count": lines.len(),
            "bound": bound,
            "ceiling_bound": ceiling,
            "ceiling_changes_verdict": ok != (lines.len() >= ceiling),
        }),
        "fewer 2-lines than the bound",
    )
}

fn main_3lines(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() < 4 || g.min_degree() < 3 || !f.is_minimal_mc() {
        return na("not a minimal matching covered graph on at least 4 vertices with minimum degree at least 3");
    }
    let lines = g.k_lines(3);
    let pair = nonadjacent_pair(g, &lines);
    let cubic = g.count_degree(3);
    decide(
        pair.is_some() && cubic >= 4,
        json!({
            "pair": pair.map(|(a, b)| edges_json(g, &[a, b])),
            "three_lines": edges_json(g, &lines),
            "cubic": cubic,
        }),
        "missing two nonadjacent 3-lines or four cubic vertices",
    )
}

fn two_or_three(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() < 4 || !f.is_minimal_mc() {
        return na("not a minimal matching covered graph on at least 4 vertices");
    }
    let mut lines = g.k_lines(2);
    lines.extend(g.k_lines(3));
    lines.sort_unstable();
    let pair = nonadjacent_pair(g, &lines);
    decide(
        pair.is_some(),
        json!({
            "pair": pair.map(|(a, b)| edges_json(g, &[a, b])),
            "candidates": edges_json(g, &lines),
        }),
        "no two nonadjacent edges among the 2-lines and 3-lines",
    )
}

fn delta_2_or_3(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() <= 2 || !f.is_minimal_mc() {
        return na("not a minimal matching covered graph other than K2");
    }
    let d = g.min_degree();
    decide(
        d == 2 || d == 3,
        json!({ "min_degree": d }),
        "minimum degree is neither 2 nor 3",
    )
}

fn bipartite_dense_mc(f: &GraphFacts) -> bool {
    let g = f.graph();
    g.vertex_count() >= 4 && g.min_degree() >= 3 && f.is_bipartite() && f.is_mc()
}

fn nonremovable(f: &GraphFacts) -> Vec<EdgeId> {
    let r = f.removable();
    f.graph().edge_ids().filter(|e| !r.contains(e)).collect()
}

fn nonre_forest(f: &GraphFacts) -> Outcome {
    if !bipartite_dense_mc(f) {
        return na("not a bipartite matching covered graph on at least 4 vertices with minimum degree at least 3");
    }
    let g = f.graph();
    let non = nonremovable(f);
    let cycle = find_cycle(g, &non);
    decide(
        cycle.is_none(),
        json!({
            "nonremovable": edges_json(g, &non),
            "cycle": cycle.map(|c| edges_json(g, &c)),
        }),
        "the nonremovable edges contain a cycle",
    )
}

fn nonre_two_per_side(f: &GraphFacts) -> Outcome {
    if !bipartite_dense_mc(f) {
        return na("not a bipartite matching covered graph on at least 4 vertices with minimum degree at least 3");
    }
    let g = f.graph();
    let non = nonremovable(f);
    let (a, b) = f.coloring().expect("bipartite");
    let light = |side: VertexSet| -> VertexSet {
        side.iter()
            .filter(|&v| non.iter().filter(|&&e| edge_of(g, e).touches(v)).count() <= 2)
            .collect()
    };
    let (la, lb) = (light(a), light(b));
    decide(
        la.len() >= 2 && lb.len() >= 2,
        json!({
            "side_a": vs_json(a),
            "side_b": vs_json(b),
            "light_a": vs_json(la),
            "light_b": vs_json(lb),
            "nonremovable": edges_json(g, &non),
        }),
        "a colour class has fewer than two vertices with at most two nonremovable edges",
    )
}

fn brick_classes(f: &GraphFacts) -> Outcome {
    if !f.is_brick() {
        return na("not a brick");
    }
    let g = f.graph();
    let classes = f.removable_classes();
    let removable = f.removable();
    let delta = g.max_degree();
    let exempt = g.is_simple() && (isomorphic_to(g, Family::K4) || isomorphic_to(g, Family::Prism));
    let classes_ok = classes.len() >= delta;
    let edges_ok = exempt || removable.len() + 2 >= delta;
    decide(
        classes_ok && edges_ok,
        json!({
            "max_degree": delta,
            "classes": classes.len(),
            "removable_edges": edges_json(g, removable),
            "exempt_from_edge_bound": exempt,
            "doubletons": classes
                .iter()
                .filter_map(|c| match *c {
                    RemovableClass::Doubleton { e, f: h } => Some(edges_json(g, &[e, h])),
                    RemovableClass::Single { .. } => None,
                })
                .collect::<Vec<_>>(),
        }),
        if !classes_ok {
            "fewer removable classes than the maximum degree"
        } else {
            "fewer than Δ - 2 removable edges"
        },
    )
}

fn nearbi_nonadj(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if !g.is_simple() || !f.is_brick() {
        return na("not a simple brick");
    }
    let Some((e1, e2)) = near_bipartite_pair(g) else {
        return na("not near-bipartite");
    };
    if [Family::K4, Family::Prism, Family::R8].into_iter().any(|fam| isomorphic_to(g, fam)) {
        return na("isomorphic to K4, the triangular prism or R8");
    }
    let removable = f.removable();
    let pair = nonadjacent_pair(g, removable);
    decide(
        pair.is_some(),
        json!({
            "bipartizing_pair": edges_json(g, &[e1, e2]),
            "pair": pair.map(|(a, b)| edges_json(g, &[a, b])),
            "removable_edges": edges_json(g, removable),
        }),
        "no two nonadjacent removable edges",
    )
}

/// Vertices meeting every removable class in exactly one edge.
fn hubs(f: &GraphFacts) -> VertexSet {
    let g = f.graph();
    let classes = f.removable_classes();
    g.vertices()
        .iter()
        .filter(|&h| {
            classes
                .iter()
                .all(|c| c.edges().iter().filter(|&&e| edge_of(g, e).touches(h)).count() == 1)
        })
        .collect()
}

fn wl_brick_hub(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() < 6 || !f.is_brick() {
        return na("not a brick on at least 6 vertices");
    }
    let hs = hubs(f);
    if hs.is_empty() {
        return na("not wheel-like");
    }
    let removable = f.removable();
    let bad: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| hs.iter().any(|h| e.touches(h)) && !removable.contains(&e.id))
        .map(|e| e.id)
        .collect();
    decide(
        bad.is_empty(),
        json!({
            "hubs": vs_json(hs),
            "nonremovable_at_hub": edges_json(g, &bad),
        }),
        "an edge at a hub is not removable",
    )
}

fn brick_cubic_re(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if !f.is_brick() {
        return na("not a brick");
    }
    let removable = f.removable();
    let lines = g.k_lines(3);
    let candidates: VertexSet = common_vertices(g, removable)
        .iter()
        .filter(|&h| lines.iter().all(|&e| edge_of(g, e).touches(h)))
        .collect();
    if candidates.is_empty() {
        return na("no vertex meets every removable edge and every 3-line");
    }
    let simple = g.underlying_simple();
    let has_doubleton = removable_classes_of_mc(&simple)
        .iter()
        .any(|c| matches!(c, RemovableClass::Doubleton { .. }));
    if !has_doubleton {
        return na("the underlying simple graph has no removable doubleton");
    }
    let heavy = |h: usize| -> VertexSet {
        g.neighbors(h)
            .iter()
            .filter(|&w| g.multiplicity(h, w) >= 2)
            .collect()
    };
    let bad = candidates
        .iter()
        .find(|&h| g.vertex_count() != 4 || heavy(h).len() < 2);
    decide(
        bad.is_none(),
        json!({
            "vertices": g.vertex_count(),
            "candidates": vs_json(candidates),
            "heavy_neighbours": candidates.iter().map(|h| json!([h, heavy(h).to_vec()])).collect::<Vec<_>>(),
            "failing_vertex": bad,
        }),
        "a qualifying vertex violates the conclusion",
    )
}

fn bicritical_without_removable(f: &GraphFacts) -> bool {
    f.is_bicritical() && f.is_minimal_mc()
}

fn bicrit_nore_cubic(f: &GraphFacts) -> Outcome {
    if !bicritical_without_removable(f) {
        return na("not a bicritical graph without removable edges");
    }
    let cubic = f.graph().count_degree(3);
    decide(cubic >= 4, json!({ "cubic": cubic }), "fewer than 4 cubic vertices")
}

fn bicrit_nore_3lines(f: &GraphFacts) -> Outcome {
    if !bicritical_without_removable(f) {
        return na("not a bicritical graph without removable edges");
    }
    let g = f.graph();
    let lines = g.k_lines(3);
    let uncovered = g.edges().iter().find(|e| avoiding(g, &lines, e).is_none());
    decide(
        lines.len() >= 2 && uncovered.is_none(),
        json!({
            "three_lines": edges_json(g, &lines),
            "edge_without_avoiding_3line": uncovered.map(|e| edge_json(g, e.id)),
        }),
        "fewer than two 3-lines, or an edge meets every 3-line",
    )
}

fn wl_bicrit(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if !f.is_bicritical() {
        return na("not bicritical");
    }
    let Some(removable) = f.removable_with_common_vertex() else {
        return na("removable edges do not share a vertex");
    };
    let removable = &removable[..];
    if removable.is_empty() {
        return na("no removable edge");
    }
    let hs = common_vertices(g, removable);
    let lines = g.k_lines(3);
    let bad = hs.iter().find(|&h| {
        let at_h = removable.iter().filter(|&&e| edge_of(g, e).touches(h)).count();
        at_h < 3 && lines.iter().all(|&e| edge_of(g, e).touches(h))
    });
    decide(
        bad.is_none(),
        json!({
            "common_vertices": vs_json(hs),
            "removable_edges": edges_json(g, removable),
            "three_lines": edges_json(g, &lines),
            "failing_vertex": bad,
        }),
        "a common vertex meets fewer than 3 removable edges and every 3-line",
    )
}

fn one_re_3line(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.min_degree() < 3 || !f.is_mc() {
        return na("not a matching covered graph with minimum degree at least 3");
    }
    let Some(removable) = f.removable_at_most(1) else {
        return na("more than one removable edge");
    };
    let removable = &removable[..];
    let lines = g.k_lines(3);
    let targets: Vec<Edge> = if removable.is_empty() {
        g.edges().to_vec()
    } else {
        vec![edge_of(g, removable[0])]
    };
    let bad = targets.iter().find(|e| avoiding(g, &lines, e).is_none());
    decide(
        bad.is_none(),
        json!({
            "removable_edges": edges_json(g, removable),
            "three_lines": edges_json(g, &lines),
            "edge_without_avoiding_3line": bad.map(|e| edge_json(g, e.id)),
        }),
        "no 3-line avoids the distinguished edge",
    )
}

fn tight_contract_mc(f: &GraphFacts) -> Outcome {
    if !f.is_mc() {
        return na("not matching covered");
    }
    let g = f.graph();
    let shores = f.tight_shores();
    if shores.is_empty() {
        return na("no nontrivial tight cut");
    }
    for &x in shores {
        let (keep_x, keep_rest) = match cut_contractions(g, x) {
            Ok(c) => c,
            Err(e) => return decide(false, json!({ "shore": vs_json(x) }), &e.to_string()),
        };
        let ok_x = is_matching_covered(&keep_x.graph);
        let ok_rest = is_matching_covered(&keep_rest.graph);
        if !ok_x || !ok_rest {
            return decide(
                false,
                json!({
                    "shore": vs_json(x),
                    "shore_side_mc": ok_x,
                    "other_side_mc": ok_rest,
                }),
                "a contraction of a nontrivial tight cut is not matching covered",
            );
        }
    }
    decide(true, json!({ "cuts": shores.len() }), "")
}

fn barrier_indep(f: &GraphFacts) -> Outcome {
    if !f.is_mc() {
        return na("not matching covered");
    }
    let g = f.graph();
    if g.vertex_count() > BARRIER_CHECK_BOUND {
        return na("exceeds the barrier enumeration bound");
    }
    let n = g.vertex_count();
    for &b in f.barriers() {
        let spans_edge = b.iter().any(|v| !g.neighbors(v).is_disjoint(b));
        let even = g
            .components_within(b.complement(n))
            .into_iter()
            .find(|c| c.len() % 2 == 0);
        if spans_edge || even.is_some() {
            return decide(
                false,
                json!({
                    "barrier": vs_json(b),
                    "spans_edge": spans_edge,
                    "even_component": even.map(vs_json),
                }),
                "a barrier is not independent or leaves an even component",
            );
        }
    }
    decide(true, json!({ "barriers": f.barriers().len() }), "")
}

fn maxbarrier_fc(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() == 0 || !f.has_perfect_matching() {
        return na("no perfect matching");
    }
    if g.vertex_count() > BARRIER_CHECK_BOUND {
        return na("exceeds the barrier enumeration bound");
    }
    let n = g.vertex_count();
    let all = f.barriers();
    let maximal: Vec<VertexSet> = all
        .iter()
        .copied()
        .filter(|b| !all.iter().any(|c| c != b && b.is_subset(*c)))
        .collect();
    let oracle = f.oracle();
    for &b in &maximal {
        for c in g.components_within(b.complement(n)) {
            let critical = c.len() == 1 || (c.len() % 2 == 1 && c.iter().all(|v| oracle.within(c.without(v))));
            if !critical {
                return decide(
                    false,
                    json!({ "barrier": vs_json(b), "component": vs_json(c) }),
                    "a component left by a maximal barrier is not factor-critical",
                );
            }
        }
    }
    decide(
        true,
        json!({ "maximal_barriers": maximal.iter().map(|&b| vs_json(b)).collect::<Vec<_>>() }),
        "",
    )
}

fn splice_mc(f: &GraphFacts) -> Outcome {
    if !f.is_mc() {
        return na("not matching covered");
    }
    let g = f.graph();
    let u = (0..g.vertex_count())
        .min_by_key(|&v| (g.degree(v), v))
        .expect("nonempty graph");
    let d = g.degree(u);
    let kdd = complete_bipartite(d, d).expect("d >= 1");
    let partners = [("self", g, u), ("complete_bipartite", &kdd, 0)];
    let mut sizes = Vec::new();
    for (name, h, v) in partners {
        let result = default_splice_map(g, u, h, v).and_then(|m| splice(g, h, &m));
        let s = match result {
            Ok(s) => s,
            Err(e) => return decide(false, json!({ "partner": name }), &e.to_string()),
        };
        if !is_matching_covered(&s) {
            return decide(
                false,
                json!({ "partner": name, "vertex": u, "splice": s }),
                "a splice of matching covered graphs is not matching covered",
            );
        }
        sizes.push(json!({ "partner": name, "vertices": s.vertex_count() }));
    }
    decide(true, json!({ "vertex": u, "splices": sizes }), "")
}

fn with_two_separations<'f>(f: &'f GraphFacts) -> Option<&'f [TightCut]> {
    if !f.is_bicritical() {
        return None;
    }
    let cuts = f.two_sep_cuts();
    (!cuts.is_empty()).then_some(cuts)
}

fn twosep_bicritical(f: &GraphFacts) -> Outcome {
    let Some(cuts) = with_two_separations(f) else {
        return na("not a bicritical graph with a 2-separation");
    };
    let g = f.graph();
    for c in cuts {
        let x = c.cut.shore;
        let (a, b) = match cut_contractions(g, x) {
            Ok(p) => p,
            Err(e) => return decide(false, json!({ "shore": vs_json(x) }), &e.to_string()),
        };
        let ok_a = crate::classify::is_bicritical(&a.graph);
        let ok_b = crate::classify::is_bicritical(&b.graph);
        if !ok_a || !ok_b {
            return decide(
                false,
                json!({ "shore": vs_json(x), "shore_side_bicritical": ok_a, "other_side_bicritical": ok_b }),
                "a contraction of a 2-separation cut is not bicritical",
            );
        }
    }
    decide(true, json!({ "cuts": cuts.len() }), "")
}

fn twosep_degree(f: &GraphFacts) -> Outcome {
    let Some(cuts) = with_two_separations(f) else {
        return na("not a bicritical graph with a 2-separation");
    };
    let g = f.graph();
    let n = g.vertex_count();
    for c in cuts {
        let Provenance::TwoSepCut { pair, .. } = c.provenance else {
            continue;
        };
        let x = c.cut.shore;
        let inside = x.difference(pair);
        let outside = x.complement(n).difference(pair);
        for s in pair {
            let a = g.neighbors(s).intersection(inside).len();
            let b = g.neighbors(s).intersection(outside).len();
            if a < 2 || b < 2 {
                return decide(
                    false,
                    json!({ "pair": vs_json(pair), "shore": vs_json(x), "vertex": s, "inside": a, "outside": b }),
                    "a 2-separation vertex has fewer than two neighbours on one side",
                );
            }
        }
    }
    decide(true, json!({ "cuts": cuts.len() }), "")
}

fn twosep_brick_shores(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if !f.is_bicritical() || g.is_k_connected(3) {
        return na("not a bicritical graph that fails to be 3-connected");
    }
    let n = g.vertex_count();
    let mut shores: Vec<VertexSet> = f.two_sep_cuts().iter().map(|c| c.cut.shore).collect();
    shores.sort_unstable();
    shores.dedup();
    let brick_side: Vec<VertexSet> = shores
        .iter()
        .copied()
        .filter(|&y| cut_contractions(g, y).map(|(keep, _)| is_brick(&keep.graph)).unwrap_or(false))
        .collect();
    let found = brick_side.iter().find_map(|&y| {
        let rest = y.complement(n);
        brick_side.iter().find(|&&y2| y2.is_subset(rest)).map(|&y2| (y, y2))
    });
    decide(
        found.is_some(),
        json!({
            "two_separation_shores": shores.len(),
            "brick_shores": brick_side.iter().map(|&y| vs_json(y)).collect::<Vec<_>>(),
            "pair": found.map(|(y, y2)| json!([y.to_vec(), y2.to_vec()])),
        }),
        "no two disjoint 2-separation shores with brick contractions",
    )
}

fn conj_minimal_brace(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    if g.vertex_count() < 6 || !f.is_minimal_brace() {
        return na("not a minimal brace on at least 6 vertices");
    }
    let lines = g.k_lines(3);
    decide(
        !lines.is_empty(),
        json!({ "three_lines": edges_json(g, &lines) }),
        "a minimal brace without a 3-line",
    )
}

fn lou_cubic(f: &GraphFacts) -> Outcome {
    let g = f.graph();
    let n = g.vertex_count();
    if n < 6 || !f.is_minimal_brace() {
        return na("not a minimal brace on at least 6 vertices");
    }
    let cubic = g.count_degree(3);
    let bound = (2 * n + 2).div_ceil(5);
    decide(
        cubic >= bound,
        json!({ "cubic": cubic, "bound": bound, "min_degree": g.min_degree() }),
        "fewer cubic vertices than the bound",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle};
    use crate::graph::build_graph;

    fn fam(f: Family, n: Option<usize>) -> Multigraph {
        gen_family(f, n).unwrap()
    }

    fn verdict(id: &str, g: &Multigraph) -> Verdict {
        run_check(id, g).unwrap().verdict
    }

    #[test]
    fn registry_is_complete_and_resolvable() {
        let ids: Vec<_> = list_checks().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), 23);
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        let k4 = fam(Family::K4, None);
        for id in ids {
            assert_eq!(run_check(id, &k4).unwrap().check_id, id);
        }
        assert!(matches!(run_check("nope", &k4), Err(Error::UnknownCheck { .. })));
        assert_eq!(resolve_checks(&["all"]).unwrap().len(), 23);
    }

    #[test]
    fn gn_examples() {
        let g5 = fam(Family::Gn, Some(5));
        let r = run_check("main-3lines", &g5).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["cubic"], 4);
        // u1v1 and u5v5
        assert_eq!(r.witness["pair"][0][1], 0);
        assert_eq!(r.witness["pair"][0][2], 5);
        assert_eq!(r.witness["pair"][1][1], 4);
        assert_eq!(r.witness["pair"][1][2], 9);
        assert_eq!(verdict("two-or-three", &g5), Verdict::Pass);
        assert_eq!(verdict("delta-2-or-3", &g5), Verdict::Pass);
        assert_eq!(verdict("bicrit-nore-cubic", &g5), Verdict::Pass);
        assert_eq!(verdict("bicrit-nore-3lines", &g5), Verdict::Pass);
        assert_eq!(verdict("twosep-brick-shores", &g5), Verdict::Pass);
        assert_eq!(verdict("tight-contract-mc", &g5), Verdict::Pass);
    }

    #[test]
    fn small_graph_examples() {
        let c4 = cycle(4).unwrap();
        let r = run_check("two-or-three", &c4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["pair"].as_array().unwrap().len(), 2);
        let k4 = complete(4).unwrap();
        let r = run_check("brick-classes", &k4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["classes"], 3);
        assert_eq!(r.witness["max_degree"], 3);
        assert_eq!(verdict("nearbi-nonadj", &k4), Verdict::NotApplicable);
        assert_eq!(verdict("nearbi-nonadj", &fam(Family::R8, None)), Verdict::NotApplicable);
        assert_eq!(verdict("bip-2lines", &c4), Verdict::Pass);
        assert_eq!(verdict("delta-2-or-3", &fam(Family::K2, None)), Verdict::NotApplicable);
        assert_eq!(verdict("barrier-indep", &cycle(6).unwrap()), Verdict::Pass);
        assert_eq!(verdict("maxbarrier-fc", &cycle(6).unwrap()), Verdict::Pass);
        assert_eq!(verdict("splice-mc", &fam(Family::Prism, None)), Verdict::Pass);
    }

    #[test]
    fn hn_is_minimal_with_one_degree_two_vertex() {
        let h = fam(Family::Hn, Some(4));
        assert_eq!(verdict("delta-2-or-3", &h), Verdict::Pass);
        assert_eq!(verdict("two-or-three", &h), Verdict::Pass);
        assert_eq!(verdict("main-3lines", &h), Verdict::NotApplicable);
    }

    #[test]
    fn minimal_braces() {
        assert!(is_minimal_brace(&cycle(4).unwrap()));
        assert!(!is_minimal_brace(&cycle(6).unwrap()));
        let k33 = fam(Family::K33, None);
        let deletions: Vec<bool> = k33.edge_ids().map(|e| is_brace(&k33.delete_edge(e).unwrap())).collect();
        assert!(deletions.iter().all(|b| !b));
        assert!(is_minimal_brace(&k33));
        assert_eq!(verdict("conj-minimal-brace", &k33), Verdict::Pass);
        let r = run_check("lou-cubic", &k33).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["bound"], 3);
    }

    #[test]
    fn checks_on_multigraphs() {
        // K4 with one doubled edge: still a brick, the copies are removable
        let g = build_graph(4, &[(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(verdict("brick-classes", &g), Verdict::Pass);
        assert_eq!(verdict("wl-bicrit", &g), Verdict::Pass);
        assert_eq!(verdict("nearbi-nonadj", &g), Verdict::NotApplicable);
    }
}
