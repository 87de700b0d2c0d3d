//! Loopless multigraphs with stable edge identities.
//!
//! Every derived graph (edge deletion, vertex deletion, contraction) keeps the
//! ids of the edges that survive, so facts computed on a contraction can be
//! transported back to the host graph edge by edge.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Vertex sets are 64-bit masks, which caps the vertex count.
pub const MAX_VERTICES: usize = 64;

/// Bound for [`are_isomorphic`].
pub const ISOMORPHISM_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An edge record; endpoints are stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    #[inline]
    pub fn ends(&self) -> VertexSet {
        VertexSet::singleton(self.u).with(self.v)
    }

    #[inline]
    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// True when the two edges share an endpoint (an edge is adjacent to itself).
    #[inline]
    pub fn is_adjacent_to(&self, other: &Edge) -> bool {
        !self.ends().is_disjoint(other.ends())
    }
}

/// A loopless multigraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    /// Sorted by id.
    edges: Vec<Edge>,
    nbr: Vec<u64>,
    deg: Vec<usize>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}; ", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}-{}", e.id.0, e.u, e.v)?;
        }
        write!(f, ")")
    }
}

/// Builds a graph whose edge ids are the positions of the pairs in the input.
pub fn build_graph(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Multigraph> {
    Multigraph::new(vertex_count, pairs)
}

/// Serialized as `{"vertex_count": n, "edges": [[id, u, v], ...]}`.
impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let edges: Vec<[usize; 3]> = self.edges.iter().map(|e| [e.id.0, e.u, e.v]).collect();
        let mut st = s.serialize_struct("Multigraph", 2)?;
        st.serialize_field("vertex_count", &self.n)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: vertex_count,
                max: MAX_VERTICES,
            });
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for (index, &(a, b)) in pairs.iter().enumerate() {
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::Loop { index, vertex: a });
            }
            edges.push(Edge {
                id: EdgeId(index),
                u: a.min(b),
                v: a.max(b),
            });
        }
        Ok(Self::from_edges(vertex_count, edges))
    }

    /// Assembles a graph from already validated edge records.
    pub(crate) fn from_edges(n: usize, mut edges: Vec<Edge>) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        edges.sort_by_key(|e| e.id);
        debug_assert!(edges.windows(2).all(|w| w[0].id < w[1].id));
        let mut nbr = vec![0u64; n];
        let mut deg = vec![0usize; n];
        for e in &edges {
            debug_assert!(e.u < e.v && e.v < n);
            nbr[e.u] |= 1 << e.v;
            nbr[e.v] |= 1 << e.u;
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        Multigraph { n, edges, nbr, deg }
    }

    /// Graph on `n` vertices built from adjacency masks; edge ids follow the
    /// order `(u, v)` with `u < v` ascending.
    pub fn from_adjacency(n: usize, adj: &[u64]) -> Self {
        let mut edges = Vec::new();
        for v in 0..n {
            for u in VertexSet(adj[v] & ((1u64 << v) - 1)).iter() {
                edges.push(Edge {
                    id: EdgeId(edges.len()),
                    u,
                    v,
                });
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        for (i, e) in edges.iter_mut().enumerate() {
            e.id = EdgeId(i);
        }
        Self::from_edges(n, edges)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map(|i| &self.edges[i])
            .map_err(|_| Error::UnknownEdge(id))
    }

    pub fn has_edge(&self, id: EdgeId) -> bool {
        self.edges.binary_search_by_key(&id, |e| e.id).is_ok()
    }

    /// One past the largest edge id in use.
    pub fn next_edge_id(&self) -> usize {
        self.edges.last().map_or(0, |e| e.id.0 + 1)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.nbr[v])
    }

    /// Neighbor bitmasks indexed by vertex.
    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.nbr
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbr[u] >> v & 1 == 1
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        if !self.adjacent(u, v) {
            return 0;
        }
        let (a, b) = (u.min(v), u.max(v));
        self.edges.iter().filter(|e| e.u == a && e.v == b).count()
    }

    pub fn incident(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    /// Edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> impl Iterator<Item = &Edge> + '_ {
        self.edges
            .iter()
            .filter(move |e| s.contains(e.u) && s.contains(e.v))
    }

    pub fn min_degree(&self) -> usize {
        self.deg.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn count_degree(&self, k: usize) -> usize {
        self.deg.iter().filter(|&&d| d == k).count()
    }

    pub fn is_simple(&self) -> bool {
        let simple_edges: usize = self.nbr.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2;
        simple_edges == self.edges.len()
    }

    pub fn is_complete_graph(&self) -> bool {
        (0..self.n).all(|v| self.nbr[v] | (1 << v) == VertexSet::full(self.n).0)
    }

    // ---------------------------------------------------------------- derived graphs

    pub fn delete_edge(&self, id: EdgeId) -> Result<Multigraph> {
        self.delete_edges(&[id])
    }

    /// Removes exactly the named edges; parallel copies survive.
    pub fn delete_edges(&self, ids: &[EdgeId]) -> Result<Multigraph> {
        for &id in ids {
            self.edge(id)?;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !ids.contains(&e.id))
            .copied()
            .collect();
        Ok(Self::from_edges(self.n, edges))
    }

    /// The subgraph induced by `keep`, with vertices renumbered in increasing
    /// order. Returns the graph and the old-to-new vertex map.
    pub fn induced(&self, keep: VertexSet) -> (Multigraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        for (i, v) in keep.intersection(self.vertices()).iter().enumerate() {
            map[v] = Some(i);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (map[e.u], map[e.v]) {
                (Some(a), Some(b)) => Some(Edge {
                    id: e.id,
                    u: a.min(b),
                    v: a.max(b),
                }),
                _ => None,
            })
            .collect();
        (Self::from_edges(keep.len(), edges), map)
    }

    pub fn remove_vertices(&self, drop: VertexSet) -> (Multigraph, Vec<Option<usize>>) {
        self.induced(drop.complement(self.n))
    }

    /// Contracts `x` to a single new vertex (index `n - |x|`, the highest),
    /// dropping the edges inside `x`.
    pub fn contract(&self, x: VertexSet) -> Result<Contraction> {
        self.check_proper(x)?;
        let new_n = self.n - x.len() + 1;
        let hub = new_n - 1;
        let mut map = vec![hub; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !x.contains(v) {
                map[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !(x.contains(e.u) && x.contains(e.v)))
            .map(|e| {
                let (a, b) = (map[e.u], map[e.v]);
                Edge {
                    id: e.id,
                    u: a.min(b),
                    v: a.max(b),
                }
            })
            .collect();
        Ok(Contraction {
            graph: Self::from_edges(new_n, edges),
            vertex_map: map,
            contracted: hub,
        })
    }

    fn check_proper(&self, x: VertexSet) -> Result<()> {
        if x.is_empty() || !x.is_subset(self.vertices()) || x.len() == self.n {
            return Err(Error::ImproperSubset);
        }
        Ok(())
    }

    // ---------------------------------------------------------------- cuts

    pub fn edge_cut(&self, x: VertexSet) -> Result<Cut> {
        self.check_proper(x)?;
        Ok(Cut {
            shore: x,
            edges: self.cut_edges(x).map(|e| e.id).collect(),
        })
    }

    /// Edges with exactly one end in `x` (no properness check).
    pub fn cut_edges(&self, x: VertexSet) -> impl Iterator<Item = &Edge> + '_ {
        self.edges
            .iter()
            .filter(move |e| x.contains(e.u) != x.contains(e.v))
    }

    // ---------------------------------------------------------------- connectivity

    /// The component of `G[within]` containing `start`.
    #[inline]
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let within = within.bits();
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.nbr[v] & within & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        VertexSet(comp)
    }

    /// Connected components of `G[within]`, ordered by least member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v, rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, self.vertices()).len() == self.n
    }

    /// True if `G[within]` is connected (the empty set counts as connected).
    #[inline]
    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(v) => self.component_of(v, within) == within,
        }
    }

    /// Number of odd components of `G - removed`.
    pub fn odd_components_after(&self, removed: VertexSet) -> usize {
        let mut rest = self.vertices().difference(removed);
        let mut odd = 0;
        while let Some(v) = rest.first() {
            let c = self.component_of(v, rest);
            rest = rest.difference(c);
            odd += c.len() & 1;
        }
        odd
    }

    /// True iff removing any set of fewer than `k` vertices leaves the
    /// underlying simple graph connected, and `n > k`.
    pub fn is_k_connected(&self, k: usize) -> bool {
        if self.n <= k {
            return false;
        }
        if k <= 3 {
            let all = self.vertices();
            if !self.is_connected_within(all) {
                return k == 0;
            }
            if k >= 2 && (0..self.n).any(|v| !self.is_connected_within(all.without(v))) {
                return false;
            }
            if k >= 3 {
                for u in 0..self.n {
                    for v in u + 1..self.n {
                        if !self.is_connected_within(all.without(u).without(v)) {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        self.connectivity() >= k
    }

    /// Vertex connectivity of the underlying simple graph: the least number of
    /// vertices whose removal disconnects it or leaves a single vertex.
    pub fn connectivity(&self) -> usize {
        let n = self.n;
        if n <= 1 || !self.is_connected() {
            return 0;
        }
        if self.is_complete_graph() {
            return n - 1;
        }
        let mut best = self.min_degree_simple();
        let mut i = 0;
        while i <= best && i < n {
            for j in i + 1..n {
                if !self.adjacent(i, j) {
                    best = best.min(self.local_connectivity(i, j, best));
                }
            }
            i += 1;
        }
        best
    }

    fn min_degree_simple(&self) -> usize {
        self.nbr
            .iter()
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Maximum number of internally disjoint s-t paths for nonadjacent s, t,
    /// capped at `cap`.
    fn local_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        // Split graph: in(v) = 2v, out(v) = 2v+1, unit capacity on in->out.
        let m = 2 * self.n;
        let mut capm = vec![0i32; m * m];
        let big = self.n as i32 + 1;
        for v in 0..self.n {
            capm[(2 * v) * m + 2 * v + 1] = if v == s || v == t { big } else { 1 };
            for w in self.neighbors(v).iter() {
                capm[(2 * v + 1) * m + 2 * w] = big;
            }
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut prev = vec![usize::MAX; m];
        while flow < cap {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            prev[src] = src;
            let mut q = VecDeque::from([src]);
            while let Some(x) = q.pop_front() {
                if x == dst {
                    break;
                }
                for y in 0..m {
                    if prev[y] == usize::MAX && capm[x * m + y] > 0 {
                        prev[y] = x;
                        q.push_back(y);
                    }
                }
            }
            if prev[dst] == usize::MAX {
                break;
            }
            let mut y = dst;
            while y != src {
                let x = prev[y];
                capm[x * m + y] -= 1;
                capm[y * m + x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    // ---------------------------------------------------------------- bipartiteness

    /// 2-coloring of a connected graph with vertex 0 in the first class.
    pub fn bipartition(&self) -> Result<Option<(VertexSet, VertexSet)>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.two_coloring())
    }

    /// 2-coloring of every component (least vertex of each in the first class).
    pub fn two_coloring(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color = vec![u8::MAX; self.n];
        let mut a = VertexSet::EMPTY;
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                if color[x] == 0 {
                    a.insert(x);
                }
                for y in self.neighbors(x).iter() {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        q.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some((a, a.complement(self.n)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    // ---------------------------------------------------------------- k-lines etc.

    /// Edges whose two ends both have degree exactly `k` (with multiplicity).
    pub fn k_lines(&self, k: usize) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| self.deg[e.u] == k && self.deg[e.v] == k)
            .map(|e| e.id)
            .collect()
    }

    /// One edge per adjacent pair, keeping the lowest id.
    pub fn underlying_simple(&self) -> Multigraph {
        let mut seen = std::collections::HashSet::new();
        let edges = self
            .edges
            .iter()
            .filter(|e| seen.insert((e.u, e.v)))
            .copied()
            .collect();
        Self::from_edges(self.n, edges)
    }

    /// Multiplicity matrix, row-major.
    pub fn multiplicity_matrix(&self) -> Vec<u32> {
        let n = self.n;
        let mut m = vec![0u32; n * n];
        for e in &self.edges {
            m[e.u * n + e.v] += 1;
            m[e.v * n + e.u] += 1;
        }
        m
    }

    /// Endpoint pairs in canonical order `(u, v)`, `u < v`, ascending.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        p.sort_unstable();
        p
    }

    /// Same vertex count and same endpoint multiset (edge ids ignored).
    pub fn same_structure(&self, other: &Multigraph) -> bool {
        self.n == other.n && self.sorted_pairs() == other.sorted_pairs()
    }
}

/// Result of [`Multigraph::contract`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Multigraph,
    /// Old vertex index to new vertex index; members of the contracted set map
    /// to `contracted`.
    pub vertex_map: Vec<usize>,
    pub contracted: usize,
}

/// An edge cut `∂(shore)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub shore: VertexSet,
    pub edges: Vec<EdgeId>,
}

impl Cut {
    pub fn is_trivial(&self, n: usize) -> bool {
        self.shore.len() == 1 || self.shore.len() + 1 == n
    }

    /// The smaller side of the cut; on a tie, the side with the smaller bitmask.
    pub fn normalized_shore(&self, n: usize) -> VertexSet {
        let other = self.shore.complement(n);
        if (other.len(), other.bits()) < (self.shore.len(), self.shore.bits()) {
            other
        } else {
            self.shore
        }
    }
}

/// Exact isomorphism test for multigraphs with at most 16 vertices: a
/// bijection of vertices carrying the edge multiset of `g` onto that of `h`.
pub fn are_isomorphic(g: &Multigraph, h: &Multigraph) -> Result<bool> {
    for x in [g, h] {
        if x.n > ISOMORPHISM_BOUND {
            return Err(Error::BoundExceeded {
                what: "isomorphism test",
                got: x.n,
                bound: ISOMORPHISM_BOUND,
            });
        }
    }
    if g.n != h.n || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let n = g.n;
    let mut dg: Vec<usize> = g.deg.clone();
    let mut dh: Vec<usize> = h.deg.clone();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let mg = g.multiplicity_matrix();
    let mh = h.multiplicity_matrix();
    // Invariant per vertex: degree plus sorted neighbor degrees.
    let inv = |x: &Multigraph, v: usize| {
        let mut nd: Vec<usize> = x.neighbors(v).iter().map(|w| x.deg[w]).collect();
        nd.sort_unstable();
        (x.deg[v], nd)
    };
    let ig: Vec<_> = (0..n).map(|v| inv(g, v)).collect();
    let ih: Vec<_> = (0..n).map(|v| inv(h, v)).collect();
    let mut sg = ig.clone();
    let mut sh = ih.clone();
    sg.sort();
    sh.sort();
    if sg != sh {
        return Ok(false);
    }
    // Visit g's vertices in BFS order so that each has mapped neighbors early.
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::EMPTY;
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| g.deg[v])
            .unwrap();
        placed.insert(start);
        let mut q = VecDeque::from([start]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            for y in g.neighbors(x).iter() {
                if !placed.contains(y) {
                    placed.insert(y);
                    q.push_back(y);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        n: usize,
        mg: &[u32],
        mh: &[u32],
        ig: &[(usize, Vec<usize>)],
        ih: &[(usize, Vec<usize>)],
    ) -> bool {
        if depth == n {
            return true;
        }
        let v = order[depth];
        for c in 0..n {
            if used[c] || ig[v] != ih[c] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| mg[v * n + w] == mh[c * n + map[w]]);
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if extend(depth + 1, order, map, used, n, mg, mh, ig, ih) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }
    Ok(extend(0, &order, &mut map, &mut used, n, &mg, &mh, &ig, &ih))
}
