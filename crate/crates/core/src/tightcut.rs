//! Tight cuts: testing, barrier cuts and 2-separation cuts, brick and brace
//! recognition, the tight cut decomposition, the bipartite quotient `H(G, B)`
//! and the wheel-like and near-bipartite tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    barrier_search, is_barrier, is_matching_covered, mc_adjacency, removable_classes_of_mc, removable_edges_of_mc,
    two_separations_unchecked,
};
use crate::error::{precondition, Error, Result};
use crate::graph::{Contraction, Cut, Edge, EdgeId, Multigraph};
use crate::matching::{PmOracle, ENUMERATION_BOUND};
use crate::vset::VertexSet;

/// Largest graph for which the exhaustive odd-shore scan backs up the
/// structured tight cut search.
pub const BRUTE_FORCE_BOUND: usize = 14;

/// Largest graph for which the decomposition lists every nontrivial tight
/// shore before choosing one.
pub const DECOMPOSITION_SCAN_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    BarrierCut { barrier: VertexSet, component: VertexSet },
    TwoSepCut { pair: VertexSet, side: VertexSet },
    /// A tight cut of a bipartite graph found from a set `T` of one colour
    /// class whose neighbourhood has exactly `|T| + 1` vertices.
    BipartiteNeighborhood { set: VertexSet },
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightCut {
    pub cut: Cut,
    pub provenance: Provenance,
    pub nontrivial: bool,
}

fn make_cut(g: &Multigraph, shore: VertexSet, provenance: Provenance) -> TightCut {
    let cut = Cut {
        shore,
        edges: g.cut_edges(shore).map(|e| e.id).collect(),
    };
    let nontrivial = !cut.is_trivial(g.vertex_count());
    TightCut {
        cut,
        provenance,
        nontrivial,
    }
}

// -------------------------------------------------------------------- testing

/// Tightness of `∂(X)` in a graph with a perfect matching: `|X|` is odd and no
/// perfect matching uses two vertex-disjoint edges of the cut.
pub fn is_tight_cut(g: &Multigraph, x: VertexSet) -> Result<bool> {
    if x.is_empty() || !x.is_subset(g.vertices()) || x.len() == g.vertex_count() {
        return Err(Error::ImproperSubset);
    }
    Ok(tight_with(g, &PmOracle::new(g), x))
}

pub(crate) fn tight_with(g: &Multigraph, oracle: &PmOracle, x: VertexSet) -> bool {
    if x.len() % 2 == 0 {
        return false;
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let outside = x.complement(n).bits();
    // two disjoint cut pairs of the underlying simple graph in one perfect matching
    for u in x {
        let mut nb = adj[u] & outside;
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let mut later = x.bits() & !((2u64 << u) - 1);
            while later != 0 {
                let u2 = later.trailing_zeros() as usize;
                later &= later - 1;
                let mut nb2 = adj[u2] & outside & !(1 << v);
                while nb2 != 0 {
                    let v2 = nb2.trailing_zeros() as usize;
                    nb2 &= nb2 - 1;
                    if oracle.without(VertexSet(1 << u | 1 << v | 1 << u2 | 1 << v2)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// -------------------------------------------------------------------- structured cuts

fn require_mc(g: &Multigraph, what: &str) -> Result<()> {
    if is_matching_covered(g) {
        Ok(())
    } else {
        Err(precondition(format!("{what} requires a matching covered graph")))
    }
}

/// `∂(V(Q))` for every nonempty barrier `B` and odd component `Q` of `G - B`.
pub fn barrier_cuts(g: &Multigraph) -> Result<Vec<TightCut>> {
    require_mc(g, "barrier_cuts")?;
    bounded(g, "barrier cuts", ENUMERATION_BOUND + 4)?;
    let mut out = Vec::new();
    for b in barrier_search(g, false, true) {
        out.extend(cuts_of_barrier(g, b));
    }
    Ok(out)
}

fn bounded(g: &Multigraph, what: &'static str, bound: usize) -> Result<()> {
    if g.vertex_count() > bound {
        return Err(Error::BoundExceeded {
            what,
            got: g.vertex_count(),
            bound,
        });
    }
    Ok(())
}

fn cuts_of_barrier(g: &Multigraph, b: VertexSet) -> Vec<TightCut> {
    g.components_within(b.complement(g.vertex_count()))
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .map(|c| {
            make_cut(
                g,
                c,
                Provenance::BarrierCut {
                    barrier: b,
                    component: c,
                },
            )
        })
        .collect()
}

/// For every 2-separation `{u, v}` and every split of the components of
/// `G - u - v` into a nonempty proper group `G1`, the cuts
/// `∂(V(G1) + u)` and `∂(V(G1) + v)`. Each is verified tight on emission.
pub fn two_separation_cuts(g: &Multigraph) -> Result<Vec<TightCut>> {
    require_mc(g, "two_separation_cuts")?;
    let oracle = PmOracle::new(g);
    let mut out = Vec::new();
    for pair in two_separations_unchecked(g) {
        for tc in cuts_of_two_separation(g, pair) {
            if !tight_with(g, &oracle, tc.cut.shore) || !tc.nontrivial {
                return Err(Error::Invariant(format!(
                    "2-separation cut with shore {:?} is not a nontrivial tight cut",
                    tc.cut.shore
                )));
            }
            out.push(tc);
        }
    }
    Ok(out)
}

fn cuts_of_two_separation(g: &Multigraph, pair: VertexSet) -> Vec<TightCut> {
    let n = g.vertex_count();
    let comps = g.components_within(pair.complement(n));
    let k = comps.len();
    let mut out = Vec::new();
    for mask in 1..(1u32 << k) - 1 {
        let side: VertexSet = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(VertexSet::EMPTY, |acc, i| acc.union(comps[i]));
        for s in pair {
            out.push(make_cut(g, side.with(s), Provenance::TwoSepCut { pair, side }));
        }
    }
    out
}

/// Nontrivial tight cuts of a bipartite matching covered graph: for a set `T`
/// inside the colour class not containing vertex 0 with `|N(T)| = |T| + 1`,
/// the shore `T + N(T)`.
fn bipartite_tight_cuts(g: &Multigraph, b: VertexSet) -> impl Iterator<Item = TightCut> + '_ {
    let members = b.to_vec();
    let k = members.len();
    (1u64..(1u64 << k)).filter_map(move |m| {
        let t: VertexSet = (0..k).filter(|&i| m >> i & 1 == 1).map(|i| members[i]).collect();
        if t.len() + 2 > k {
            return None;
        }
        let nbrs = t.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)));
        (nbrs.len() == t.len() + 1).then(|| make_cut(g, t.union(nbrs), Provenance::BipartiteNeighborhood { set: t }))
    })
}

/// Every nontrivial tight shore (normalized to the smaller side), found by
/// scanning all odd shores.
pub fn all_nontrivial_tight_shores(g: &Multigraph) -> Result<Vec<VertexSet>> {
    bounded(g, "odd shore scan", DECOMPOSITION_SCAN_BOUND + 4)?;
    Ok(scan_shores(g, &PmOracle::new(g), false))
}

fn scan_shores(g: &Multigraph, oracle: &PmOracle, first_only: bool) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n < 6 {
        return out;
    }
    // shores containing vertex 0 cover every cut once
    for rest in 0u64..(1u64 << (n - 1)) {
        let x = VertexSet(rest << 1 | 1);
        let k = x.len();
        if k % 2 == 0 || k < 3 || k + 3 > n {
            continue;
        }
        if tight_with(g, oracle, x) {
            let cut = Cut {
                shore: x,
                edges: Vec::new(),
            };
            out.push(cut.normalized_shore(n));
            if first_only {
                break;
            }
        }
    }
    out.sort_unstable_by_key(|s| (s.len(), s.bits()));
    out.dedup();
    out
}

/// A nontrivial tight cut if one exists: barrier cuts from maximal barriers,
/// then 2-separation cuts, then (for bipartite graphs) neighbourhood-tight
/// sets; for graphs up to [`BRUTE_FORCE_BOUND`] vertices an exhaustive odd
/// shore scan runs when the structured passes find nothing.
pub fn find_nontrivial_tight_cut(g: &Multigraph) -> Result<Option<TightCut>> {
    require_mc(g, "find_nontrivial_tight_cut")?;
    if let Some(c) = structured_tight_cut(g) {
        return Ok(Some(c));
    }
    if g.vertex_count() <= BRUTE_FORCE_BOUND {
        let oracle = PmOracle::new(g);
        if let Some(&x) = scan_shores(g, &oracle, true).first() {
            return Ok(Some(make_cut(g, x, Provenance::BruteForce)));
        }
    }
    Ok(None)
}

/// The structured passes of [`find_nontrivial_tight_cut`] alone.
pub fn structured_tight_cut(g: &Multigraph) -> Option<TightCut> {
    let n = g.vertex_count();
    if n < 6 {
        return None;
    }
    let bip = g.two_coloring();
    if n <= ENUMERATION_BOUND + 4 {
        for b in barrier_search(g, true, true) {
            if let Some(c) = cuts_of_barrier(g, b).into_iter().find(|c| c.nontrivial) {
                return Some(c);
            }
        }
    }
    if let Some(pair) = two_separations_unchecked(g).into_iter().next() {
        return cuts_of_two_separation(g, pair).into_iter().next();
    }
    if let Some((a, b)) = bip {
        let other = if a.contains(0) { b } else { a };
        return bipartite_tight_cuts(g, other).next();
    }
    None
}

// -------------------------------------------------------------------- bricks and braces

/// 3-connected and bicritical.
pub fn is_brick(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    n >= 4 && n % 2 == 0 && crate::classify::is_bicritical(g) && g.is_k_connected(3)
}

/// Bipartite, matching covered, and free of nontrivial tight cuts. In a
/// bipartite matching covered graph those cuts are exactly the ones found by
/// the neighbourhood scan.
pub fn is_brace(g: &Multigraph) -> bool {
    let Some((a, b)) = g.two_coloring() else {
        return false;
    };
    if !g.is_connected() || !is_matching_covered(g) {
        return false;
    }
    let other = if a.contains(0) { b } else { a };
    g.vertex_count() < 6 || bipartite_tight_cuts(g, other).next().is_none()
}

/// Both contractions of the cut `∂(X)`: first `G / X̄` (the side `X` kept),
/// then `G / X`.
pub fn cut_contractions(g: &Multigraph, x: VertexSet) -> Result<(Contraction, Contraction)> {
    let n = g.vertex_count();
    Ok((g.contract(x.complement(n))?, g.contract(x)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Brick,
    Brace,
}

#[derive(Clone, Debug, Serialize)]
pub struct Leaf {
    pub kind: LeafKind,
    pub graph: Multigraph,
}

/// One cut applied during the decomposition. Nodes are numbered in the order
/// they are created; node 0 is the input graph.
#[derive(Clone, Debug, Serialize)]
pub struct DecompStep {
    pub node: usize,
    pub shore: VertexSet,
    pub cut_edges: Vec<EdgeId>,
    /// Node holding `G / X̄` (the shore side kept).
    pub shore_child: usize,
    /// Node holding `G / X`.
    pub other_child: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompResult {
    pub leaves: Vec<Leaf>,
    pub tree: Vec<DecompStep>,
}

impl DecompResult {
    pub fn brick_count(&self) -> usize {
        self.leaves.iter().filter(|l| l.kind == LeafKind::Brick).count()
    }

    pub fn brace_count(&self) -> usize {
        self.leaves.iter().filter(|l| l.kind == LeafKind::Brace).count()
    }

    /// Sorted `(kind, vertex count)` pairs.
    pub fn signature(&self) -> Vec<(LeafKind, usize)> {
        let mut v: Vec<_> = self.leaves.iter().map(|l| (l.kind, l.graph.vertex_count())).collect();
        v.sort_unstable();
        v
    }
}

/// Candidate nontrivial tight shores for one decomposition step, sorted by
/// size and then bitmask.
fn decomposition_candidates(g: &Multigraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    if n <= DECOMPOSITION_SCAN_BOUND {
        return scan_shores(g, &PmOracle::new(g), false);
    }
    let mut shores: Vec<VertexSet> = Vec::new();
    if n <= ENUMERATION_BOUND + 4 {
        for b in barrier_search(g, false, true) {
            shores.extend(cuts_of_barrier(g, b).into_iter().filter(|c| c.nontrivial).map(|c| c.cut.normalized_shore(n)));
        }
    }
    for pair in two_separations_unchecked(g) {
        shores.extend(cuts_of_two_separation(g, pair).into_iter().map(|c| c.cut.normalized_shore(n)));
    }
    if let Some((a, b)) = g.two_coloring() {
        let other = if a.contains(0) { b } else { a };
        shores.extend(bipartite_tight_cuts(g, other).map(|c| c.cut.normalized_shore(n)));
    }
    shores.sort_unstable_by_key(|s| (s.len(), s.bits()));
    shores.dedup();
    shores
}

/// Repeatedly splits along nontrivial tight cuts until every piece is a brick
/// or a brace. Seed 0 always takes the least candidate shore (by size, then
/// bitmask); other seeds choose uniformly among the candidates.
pub fn tight_cut_decomposition(g: &Multigraph, seed: u64) -> Result<DecompResult> {
    require_mc(g, "tight_cut_decomposition")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    let mut tree = Vec::new();
    let mut next_node = 1;
    let mut work = vec![(0usize, g.clone())];
    while let Some((node, h)) = work.pop() {
        let candidates = decomposition_candidates(&h);
        if candidates.is_empty() {
            let kind = if h.is_bipartite() { LeafKind::Brace } else { LeafKind::Brick };
            leaves.push(Leaf { kind, graph: h });
            continue;
        }
        let pick = if seed == 0 { 0 } else { rng.random_range(0..candidates.len()) };
        let x = candidates[pick];
        let (keep, other) = cut_contractions(&h, x)?;
        tree.push(DecompStep {
            node,
            shore: x,
            cut_edges: h.cut_edges(x).map(|e| e.id).collect(),
            shore_child: next_node,
            other_child: next_node + 1,
        });
        // pushed in reverse so the shore side is processed first
        work.push((next_node + 1, other.graph));
        work.push((next_node, keep.graph));
        next_node += 2;
    }
    Ok(DecompResult { leaves, tree })
}

// -------------------------------------------------------------------- H(G, B)

/// `H(G, B)`: every nontrivial odd component of `G - B` contracted to one
/// vertex. Vertices of `G` that survive come first in their original order,
/// followed by one vertex per contracted component (ordered by least member).
/// Edge ids are preserved.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientH {
    pub graph: Multigraph,
    /// The barrier, in the quotient's numbering.
    pub barrier: VertexSet,
    /// Contracted vertex of the quotient and the component of `G` it replaces.
    pub component_map: Vec<(usize, VertexSet)>,
    /// Vertex of `G` to vertex of the quotient.
    pub vertex_map: Vec<usize>,
    /// The partite set other than the barrier.
    pub i_set: VertexSet,
    /// Vertices of `I` with degree at least 3 and at most 2 nonremovable
    /// incident edges.
    pub u_set: VertexSet,
}

/// Contracts each of the disjoint sets in `parts` to its own vertex.
pub fn contract_parts(g: &Multigraph, parts: &[VertexSet]) -> (Multigraph, Vec<usize>) {
    let n = g.vertex_count();
    let covered = parts.iter().fold(VertexSet::EMPTY, |acc, p| acc.union(*p));
    let mut map = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        if !covered.contains(v) {
            map[v] = next;
            next += 1;
        }
    }
    for p in parts {
        for v in *p {
            map[v] = next;
        }
        next += 1;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| map[e.u] != map[e.v])
        .map(|e| Edge {
            id: e.id,
            u: map[e.u].min(map[e.v]),
            v: map[e.u].max(map[e.v]),
        })
        .collect();
    (Multigraph::from_edges(next, edges), map)
}

pub fn quotient_h(g: &Multigraph, b: VertexSet) -> Result<QuotientH> {
    if b.len() < 2 {
        return Err(precondition("quotient_h requires a nontrivial barrier"));
    }
    if g.is_bipartite() {
        return Err(precondition("quotient_h requires a nonbipartite graph"));
    }
    require_mc(g, "quotient_h")?;
    if !b.is_subset(g.vertices()) || !is_barrier(g, b) {
        return Err(precondition(format!("{b:?} is not a barrier")));
    }
    let n = g.vertex_count();
    let mut parts: Vec<VertexSet> = g
        .components_within(b.complement(n))
        .into_iter()
        .filter(|c| c.len() >= 3 && c.len() % 2 == 1)
        .collect();
    parts.sort_unstable_by_key(|c| c.first());
    let (h, map) = contract_parts(g, &parts);
    let barrier: VertexSet = b.iter().map(|v| map[v]).collect();
    let i_set = barrier.complement(h.vertex_count());
    let component_map: Vec<(usize, VertexSet)> = parts.iter().map(|p| (map[p.first().unwrap_or(0)], *p)).collect();
    if !mc_adjacency(h.vertex_count(), h.adjacency()) {
        return Err(Error::Invariant("H(G, B) is not matching covered".into()));
    }
    let removable = removable_edges_of_mc(&h);
    let u_set = i_set
        .iter()
        .filter(|&u| {
            let nonremovable = h.incident(u).filter(|e| !removable.contains(&e.id)).count();
            h.degree(u) >= 3 && nonremovable <= 2
        })
        .collect();
    Ok(QuotientH {
        graph: h,
        barrier,
        component_map,
        vertex_map: map,
        i_set,
        u_set,
    })
}

// -------------------------------------------------------------------- brick shapes

/// The least vertex `h` such that every removable class of the brick meets
/// `∂(h)` in exactly one edge.
pub fn is_wheel_like(g: &Multigraph) -> Result<Option<usize>> {
    if !is_brick(g) {
        return Err(precondition("is_wheel_like requires a brick"));
    }
    let classes = removable_classes_of_mc(g);
    Ok(wheel_like_hub(g, &classes))
}

pub(crate) fn wheel_like_hub(g: &Multigraph, classes: &[crate::classify::RemovableClass]) -> Option<usize> {
    let ends: Vec<Vec<VertexSet>> = classes
        .iter()
        .map(|c| c.edges().iter().map(|&e| g.edge(e).map(|x| x.ends()).unwrap_or_default()).collect())
        .collect();
    (0..g.vertex_count()).find(|&h| ends.iter().all(|es| es.iter().filter(|s| s.contains(h)).count() == 1))
}

/// A pair of edges whose removal leaves a bipartite matching covered graph.
pub fn is_near_bipartite(g: &Multigraph) -> Result<Option<(EdgeId, EdgeId)>> {
    if g.is_bipartite() {
        return Err(precondition("is_near_bipartite requires a nonbipartite graph"));
    }
    require_mc(g, "is_near_bipartite")?;
    Ok(near_bipartite_pair(g))
}

pub(crate) fn near_bipartite_pair(g: &Multigraph) -> Option<(EdgeId, EdgeId)> {
    let edges = g.edges();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            let h = g.delete_edges(&[e.id, f.id]).ok()?;
            if h.is_connected() && h.is_bipartite() && is_matching_covered(&h) {
                return Some((e.id, f.id));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, gen_family, Family};
    use crate::graph::are_isomorphic;
    use crate::matching::enumerate_perfect_matchings;

    fn fam(f: Family, n: Option<usize>) -> Multigraph {
        gen_family(f, n).unwrap()
    }

    fn tight_by_enumeration(g: &Multigraph, x: VertexSet) -> bool {
        let pms = enumerate_perfect_matchings(g).unwrap();
        let cut: Vec<EdgeId> = g.cut_edges(x).map(|e| e.id).collect();
        pms.iter().all(|m| m.edges.iter().filter(|e| cut.contains(e)).count() == 1)
    }

    #[test]
    fn tight_cut_examples() {
        let c6 = cycle(6).unwrap();
        let x = VertexSet::from_slice(&[1, 2, 3]);
        assert!(is_tight_cut(&c6, x).unwrap());
        assert!(tight_by_enumeration(&c6, x));
        let k4 = fam(Family::K4, None);
        assert!(is_tight_cut(&k4, VertexSet::singleton(2)).unwrap());
        let h5 = fam(Family::Hn, Some(5));
        assert!(is_tight_cut(&h5, VertexSet::from_slice(&[9, 10, 11])).unwrap());
        assert!(is_tight_cut(&c6, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn barrier_and_two_separation_cuts() {
        let c8 = cycle(8).unwrap();
        let cuts = barrier_cuts(&c8).unwrap();
        let b = VertexSet::from_slice(&[0, 4]);
        let from_b: Vec<_> = cuts
            .iter()
            .filter(|c| matches!(c.provenance, Provenance::BarrierCut { barrier, .. } if barrier == b))
            .collect();
        assert_eq!(from_b.len(), 2);
        assert!(from_b.iter().all(|c| c.nontrivial && tight_by_enumeration(&c8, c.cut.shore)));
        assert!(barrier_cuts(&fam(Family::K4, None)).unwrap().iter().all(|c| !c.nontrivial));
        let sep = two_separation_cuts(&c8).unwrap();
        let pair = VertexSet::from_slice(&[0, 3]);
        let shores: Vec<_> = sep
            .iter()
            .filter(|c| matches!(c.provenance, Provenance::TwoSepCut { pair: p, side } if p == pair && side == VertexSet::from_slice(&[1, 2])))
            .map(|c| c.cut.shore)
            .collect();
        assert_eq!(shores, vec![VertexSet::from_slice(&[0, 1, 2]), VertexSet::from_slice(&[1, 2, 3])]);
        assert!(sep.iter().all(|c| tight_by_enumeration(&c8, c.cut.shore)));
        assert!(two_separation_cuts(&fam(Family::K4, None)).unwrap().is_empty());
        let g5 = fam(Family::Gn, Some(5));
        assert!(!two_separation_cuts(&g5).unwrap().is_empty());
    }

    #[test]
    fn nontrivial_cut_search() {
        assert!(find_nontrivial_tight_cut(&cycle(6).unwrap()).unwrap().is_some());
        assert!(find_nontrivial_tight_cut(&fam(Family::K4, None)).unwrap().is_none());
        assert!(find_nontrivial_tight_cut(&fam(Family::Prism, None)).unwrap().is_none());
        let g5 = fam(Family::Gn, Some(5));
        assert!(find_nontrivial_tight_cut(&g5).unwrap().unwrap().nontrivial);
    }

    #[test]
    fn bricks_and_braces() {
        assert!(is_brick(&fam(Family::K4, None)));
        assert!(is_brick(&fam(Family::Prism, None)));
        assert!(!is_brick(&cycle(6).unwrap()));
        assert!(is_brick(&fam(Family::Wheel, Some(5))));
        assert!(is_brace(&cycle(4).unwrap()));
        assert!(is_brace(&fam(Family::K33, None)));
        assert!(!is_brace(&cycle(6).unwrap()));
    }

    #[test]
    fn decompositions() {
        let k4 = fam(Family::K4, None);
        let d = tight_cut_decomposition(&k4, 0).unwrap();
        assert_eq!(d.leaves.len(), 1);
        assert_eq!(d.brick_count(), 1);
        let c6 = cycle(6).unwrap();
        let c4 = cycle(4).unwrap();
        for seed in 0..5 {
            let d = tight_cut_decomposition(&c6, seed).unwrap();
            assert_eq!(d.brace_count(), 2);
            for leaf in &d.leaves {
                assert!(are_isomorphic(&leaf.graph.underlying_simple(), &c4).unwrap());
            }
        }
        let g5 = fam(Family::Gn, Some(5));
        for seed in 0..5 {
            let d = tight_cut_decomposition(&g5, seed).unwrap();
            assert_eq!(d.brick_count(), 4);
            assert_eq!(d.leaves.len(), 4);
            for leaf in &d.leaves {
                assert!(are_isomorphic(&leaf.graph.underlying_simple(), &k4).unwrap());
            }
        }
    }

    #[test]
    fn quotient_of_hn() {
        let h5 = fam(Family::Hn, Some(5));
        let q = quotient_h(&h5, VertexSet::from_slice(&[9, 11])).unwrap();
        assert_eq!(q.graph.vertex_count(), 4);
        assert_eq!(q.component_map.len(), 1);
        assert_eq!(q.component_map[0].1.len(), 9);
        assert!(q.graph.is_bipartite());
        let a_prime = q.vertex_map[10];
        let contracted = q.component_map[0].0;
        assert_eq!(q.i_set, VertexSet::from_slice(&[a_prime, contracted]));
        assert!(quotient_h(&cycle(8).unwrap(), VertexSet::from_slice(&[0, 4])).is_err());
        assert!(quotient_h(&h5, VertexSet::singleton(9)).is_err());
    }

    #[test]
    fn wheel_like_and_near_bipartite() {
        let w5 = fam(Family::Wheel, Some(5));
        assert_eq!(is_wheel_like(&w5).unwrap(), Some(0));
        assert!(is_wheel_like(&fam(Family::K33, None)).is_err());
        let k4 = fam(Family::K4, None);
        let (e, f) = is_near_bipartite(&k4).unwrap().unwrap();
        assert!(!k4.edge(e).unwrap().is_adjacent_to(k4.edge(f).unwrap()));
        assert!(is_near_bipartite(&fam(Family::Prism, None)).unwrap().is_some());
        assert!(is_near_bipartite(&w5).unwrap().is_none());
    }
}
