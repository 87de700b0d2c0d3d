//! Perfect-matching machinery: blossom maximum matching, a subset table of
//! perfectly matchable vertex sets, brute-force enumeration, and the
//! factor-critical and n-extendable predicates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Multigraph};
use crate::vset::VertexSet;

/// Default vertex bound for [`enumerate_perfect_matchings`].
pub const ENUMERATION_BOUND: usize = 16;

/// Graphs up to this many vertices get a full matchable-subset table.
pub const TABLE_BOUND: usize = 22;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    pub edges: Vec<EdgeId>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_perfect(&self, g: &Multigraph) -> bool {
        2 * self.edges.len() == g.vertex_count()
    }

    /// Checks that the ids exist and pairwise share no endpoint.
    pub fn is_valid_in(&self, g: &Multigraph) -> bool {
        let mut covered = VertexSet::EMPTY;
        for &id in &self.edges {
            let Ok(e) = g.edge(id) else { return false };
            if !covered.is_disjoint(e.ends()) {
                return false;
            }
            covered = covered.union(e.ends());
        }
        true
    }
}

// -------------------------------------------------------------------- blossom

/// Edmonds' blossom algorithm on the simple graph given by adjacency masks,
/// restricted to the vertices in `within`. Returns the mate of every vertex.
pub(crate) fn blossom_mates(adj: &[u64], within: u64) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate: Vec<usize> = vec![usize::MAX; n];
    // greedy start
    for v in 0..n {
        if within >> v & 1 == 0 || mate[v] != usize::MAX {
            continue;
        }
        let mut cand = adj[v] & within;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if mate[u] == usize::MAX {
                mate[v] = u;
                mate[u] = v;
                break;
            }
        }
    }
    let mut state = BlossomState::new(n);
    for root in 0..n {
        if within >> root & 1 == 0 || mate[root] != usize::MAX {
            continue;
        }
        if let Some(mut v) = state.find_path(adj, within, &mate, root) {
            while v != usize::MAX {
                let pv = state.parent[v];
                let ppv = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = ppv;
            }
        }
    }
    mate.into_iter()
        .map(|m| if m == usize::MAX { None } else { Some(m) })
        .collect()
}

struct BlossomState {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: Vec<usize>,
}

impl BlossomState {
    fn new(n: usize) -> Self {
        BlossomState {
            parent: vec![usize::MAX; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, adj: &[u64], within: u64, mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = usize::MAX);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let mut nb = adj[v] & within;
            while nb != 0 {
                let to = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != usize::MAX && self.parent[mate[to]] != usize::MAX) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if within >> i & 1 == 1 && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == usize::MAX {
                    self.parent[to] = v;
                    if mate[to] == usize::MAX {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push(m);
                }
            }
        }
        None
    }
}

/// Lowest edge id joining `u` and `v`.
fn lowest_edge_between(g: &Multigraph, u: usize, v: usize) -> EdgeId {
    let (a, b) = (u.min(v), u.max(v));
    g.edges()
        .iter()
        .find(|e| e.u == a && e.v == b)
        .map(|e| e.id)
        .expect("matched pair must be adjacent")
}

fn mates_to_matching(g: &Multigraph, mates: &[Option<usize>]) -> Matching {
    let mut edges: Vec<EdgeId> = mates
        .iter()
        .enumerate()
        .filter_map(|(v, m)| match m {
            Some(u) if v < *u => Some(lowest_edge_between(g, v, *u)),
            _ => None,
        })
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

/// A maximum-cardinality matching (blossom shrinking on the underlying simple
/// graph, mapped back to the lowest edge id of each matched pair).
pub fn max_matching(g: &Multigraph) -> Matching {
    let mates = blossom_mates(g.adjacency(), g.vertices().bits());
    mates_to_matching(g, &mates)
}

/// Size of a maximum matching of `G - removed`.
pub fn max_matching_size_without(g: &Multigraph, removed: VertexSet) -> usize {
    let within = g.vertices().difference(removed).bits();
    blossom_mates(g.adjacency(), within)
        .iter()
        .filter(|m| m.is_some())
        .count()
        / 2
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    g.vertex_count() % 2 == 0 && max_matching_size_without(g, VertexSet::EMPTY) * 2 == g.vertex_count()
}

/// Whether `G - removed` has a perfect matching, decided by blossom.
pub fn has_perfect_matching_without(g: &Multigraph, removed: VertexSet) -> bool {
    let rest = g.vertices().difference(removed).len();
    rest % 2 == 0 && max_matching_size_without(g, removed) * 2 == rest
}

/// `o(G - S)`.
pub fn odd_components(g: &Multigraph, s: VertexSet) -> usize {
    g.odd_components_after(s)
}

/// Whether some perfect matching contains `e`.
pub fn is_allowed(g: &Multigraph, e: EdgeId) -> Result<bool> {
    let edge = g.edge(e)?;
    Ok(has_perfect_matching_without(g, edge.ends()))
}

/// `|V| >= 3` and every vertex-deleted subgraph has a perfect matching.
pub fn is_factor_critical(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    n >= 3 && n % 2 == 1 && (0..n).all(|v| has_perfect_matching_without(g, VertexSet::singleton(v)))
}

/// `max_S (o(G - S) - |S|)` by exhaustive search over all subsets.
pub fn max_tutte_deficiency(g: &Multigraph) -> Result<i64> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(Error::BoundExceeded {
            what: "Tutte deficiency search",
            got: n,
            bound: 20,
        });
    }
    let mut best = i64::MIN;
    for s in 0..(1u64 << n) {
        let s = VertexSet(s);
        let d = g.odd_components_after(s) as i64 - s.len() as i64;
        best = best.max(d);
    }
    Ok(best)
}

// -------------------------------------------------------------------- subset table

/// For every vertex subset `S`, whether `G[S]` has a perfect matching.
///
/// Built by dynamic programming over subsets: `G[S]` is perfectly matchable
/// iff its least vertex has a neighbor `u` in `S` with `G[S - v - u]`
/// perfectly matchable.
#[derive(Clone)]
pub struct MatchableSubsets {
    n: usize,
    bits: Vec<u64>,
}

impl MatchableSubsets {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > TABLE_BOUND {
            return Err(Error::BoundExceeded {
                what: "matchable-subset table",
                got: n,
                bound: TABLE_BOUND,
            });
        }
        Ok(Self::from_adjacency(n, g.adjacency()))
    }

    pub(crate) fn from_adjacency(n: usize, adj: &[u64]) -> Self {
        let size = 1usize << n;
        let mut bits = vec![0u64; size.div_ceil(64)];
        bits[0] |= 1;
        for mask in 1..size {
            if (mask as u64).count_ones() & 1 == 1 {
                continue;
            }
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << v);
            let mut cand = adj[v] & rest as u64;
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let sub = rest & !(1 << u);
                if bits[sub >> 6] >> (sub & 63) & 1 == 1 {
                    bits[mask >> 6] |= 1 << (mask & 63);
                    break;
                }
            }
        }
        MatchableSubsets { n, bits }
    }

    #[inline]
    pub fn matchable(&self, s: VertexSet) -> bool {
        let m = s.bits() as usize;
        self.bits[m >> 6] >> (m & 63) & 1 == 1
    }

    #[inline]
    pub fn matchable_without(&self, removed: VertexSet) -> bool {
        self.matchable(VertexSet::full(self.n).difference(removed))
    }
}

/// Answers "does `G - X` have a perfect matching" for a fixed graph, from the
/// subset table when the graph is small enough and by blossom otherwise.
pub enum PmOracle {
    Table(MatchableSubsets),
    Blossom { adj: Vec<u64>, all: u64 },
}

impl PmOracle {
    pub fn new(g: &Multigraph) -> Self {
        Self::from_adjacency(g.vertex_count(), g.adjacency())
    }

    /// Oracle for the simple graph on `0..n` with adjacency masks `adj`.
    pub fn from_adjacency(n: usize, adj: &[u64]) -> Self {
        if n <= TABLE_BOUND {
            PmOracle::Table(MatchableSubsets::from_adjacency(n, adj))
        } else {
            PmOracle::Blossom {
                adj: adj.to_vec(),
                all: VertexSet::full(n).bits(),
            }
        }
    }

    #[inline]
    pub fn without(&self, removed: VertexSet) -> bool {
        match self {
            PmOracle::Table(t) => t.matchable_without(removed),
            PmOracle::Blossom { adj, all } => {
                let within = all & !removed.bits();
                if within.count_ones() % 2 == 1 {
                    return false;
                }
                blossom_mates(adj, within).iter().filter(|m| m.is_some()).count() == within.count_ones() as usize
            }
        }
    }

    /// Whether `G[S]` has a perfect matching.
    #[inline]
    pub fn within(&self, s: VertexSet) -> bool {
        match self {
            PmOracle::Table(t) => t.matchable(s),
            PmOracle::Blossom { all, .. } => self.without(VertexSet(all & !s.bits())),
        }
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.without(VertexSet::EMPTY)
    }

    #[inline]
    pub fn edge_allowed(&self, e: &Edge) -> bool {
        self.without(e.ends())
    }

    #[inline]
    pub fn pair_allowed(&self, u: usize, v: usize) -> bool {
        self.without(VertexSet::singleton(u).with(v))
    }
}

// -------------------------------------------------------------------- enumeration

/// All perfect matchings, by backtracking on the lowest uncovered vertex;
/// parallel edges give distinct matchings. Order is deterministic.
pub fn enumerate_perfect_matchings(g: &Multigraph) -> Result<Vec<Matching>> {
    enumerate_perfect_matchings_bounded(g, ENUMERATION_BOUND)
}

pub fn enumerate_perfect_matchings_bounded(g: &Multigraph, bound: usize) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, bound, |m| out.push(Matching { edges: m.to_vec() }))?;
    Ok(out)
}

/// Visits every perfect matching as a slice of edge ids.
pub fn for_each_perfect_matching<F: FnMut(&[EdgeId])>(g: &Multigraph, bound: usize, mut visit: F) -> Result<()> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "perfect matching enumeration",
            got: n,
            bound,
        });
    }
    if n % 2 == 1 {
        return Ok(());
    }
    let mut incident: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for e in g.edges() {
        incident[e.u].push((e.v, e.id));
        incident[e.v].push((e.u, e.id));
    }
    fn rec<F: FnMut(&[EdgeId])>(
        uncovered: u64,
        incident: &[Vec<(usize, EdgeId)>],
        stack: &mut Vec<EdgeId>,
        visit: &mut F,
    ) {
        if uncovered == 0 {
            visit(stack);
            return;
        }
        let v = uncovered.trailing_zeros() as usize;
        for &(u, id) in &incident[v] {
            if uncovered >> u & 1 == 1 {
                stack.push(id);
                rec(uncovered & !(1 << v) & !(1 << u), incident, stack, visit);
                stack.pop();
            }
        }
    }
    let mut stack = Vec::with_capacity(n / 2);
    rec(g.vertices().bits(), &incident, &mut stack, &mut visit);
    Ok(())
}

// -------------------------------------------------------------------- extendability

/// Connected, at least `2k + 2` vertices, a matching of size `k`, and every
/// matching of size `k` extends to a perfect matching.
pub fn is_n_extendable(g: &Multigraph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 || n < 2 * k + 2 || !g.is_connected() {
        return false;
    }
    if max_matching(g).len() < k {
        return false;
    }
    let oracle = PmOracle::new(g);
    let simple: Vec<VertexSet> = g.underlying_simple().edges().iter().map(|e| e.ends()).collect();
    fn rec(start: usize, left: usize, covered: VertexSet, edges: &[VertexSet], oracle: &PmOracle) -> bool {
        if left == 0 {
            return oracle.without(covered);
        }
        for i in start..edges.len() {
            if edges[i].is_disjoint(covered) && !rec(i + 1, left - 1, covered.union(edges[i]), edges, oracle) {
                return false;
            }
        }
        true
    }
    rec(0, k, VertexSet::EMPTY, &simple, &oracle)
}
