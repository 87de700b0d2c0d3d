//! Isomorph-free generation of small simple graphs by canonical augmentation:
//! a graph on `n` vertices is produced from the graph left after deleting a
//! canonically chosen vertex of maximum degree. A balanced bipartite variant
//! adds vertices to one colour class at a time.

use std::collections::HashSet;

use crate::canon::{canonical_form, Canon, CANON_BOUND};
use crate::classify::connected_within;
use crate::graph::Multigraph;
use crate::vset::VertexSet;

/// Largest vertex count the generators accept.
pub const GENERATION_BOUND: usize = 12;

/// Key used to order vertices before canonical labeling: degree, then the sum
/// of the neighbours' degrees.
fn vertex_keys(n: usize, adj: &[u64]) -> Vec<u32> {
    let deg: Vec<u32> = (0..n).map(|v| adj[v].count_ones()).collect();
    (0..n)
        .map(|v| {
            let mut s = 0;
            let mut nb = adj[v];
            while nb != 0 {
                s += deg[nb.trailing_zeros() as usize];
                nb &= nb - 1;
            }
            deg[v] << 16 | s
        })
        .collect()
}

/// Cells of `members` grouped by ascending key.
fn cells_by_key(members: VertexSet, keys: &[u32]) -> Vec<VertexSet> {
    let mut vs: Vec<usize> = members.to_vec();
    vs.sort_by_key(|&v| (keys[v], v));
    let mut cells: Vec<VertexSet> = Vec::new();
    let mut last = None;
    for v in vs {
        if last == Some(keys[v]) {
            cells.last_mut().expect("cell exists").insert(v);
        } else {
            cells.push(VertexSet::singleton(v));
            last = Some(keys[v]);
        }
    }
    cells
}

/// Whether `s` is the least member of its orbit under the group generated by
/// `gens` (acting on vertex sets).
fn is_orbit_minimum(s: u64, gens: &[Vec<usize>]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let image = |g: &Vec<usize>, x: u64| -> u64 {
        let mut y = 0;
        let mut b = x;
        while b != 0 {
            let v = b.trailing_zeros() as usize;
            b &= b - 1;
            y |= 1 << g[v];
        }
        y
    };
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(s);
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = image(g, x);
            if y < s {
                return false;
            }
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    true
}

/// Graphs of one order, stored as flattened adjacency rows.
struct Level {
    n: usize,
    rows: Vec<u16>,
}

impl Level {
    fn len(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            self.rows.len() / self.n
        }
    }

    fn get(&self, i: usize, out: &mut [u64]) {
        for v in 0..self.n {
            out[v] = self.rows[i * self.n + v] as u64;
        }
    }
}

/// Calls `visit(n, adjacency)` once for every isomorphism class of simple
/// graphs on `n` vertices.
pub fn for_each_graph<F: FnMut(usize, &[u64])>(n: usize, mut visit: F) {
    assert!(n <= GENERATION_BOUND, "graph generation supports at most {GENERATION_BOUND} vertices");
    if n == 0 {
        visit(0, &[]);
        return;
    }
    let mut level = Level {
        n: 0,
        rows: Vec::new(),
    };
    for k in 1..n {
        let mut next = Level {
            n: k,
            rows: Vec::new(),
        };
        children(&level, |adj| next.rows.extend(adj.iter().map(|&r| r as u16)));
        level = next;
    }
    children(&level, |adj| visit(n, adj));
}

/// Connected graphs only.
pub fn for_each_connected_graph<F: FnMut(usize, &[u64])>(n: usize, mut visit: F) {
    for_each_graph(n, |n, adj| {
        if connected_within(adj, VertexSet::full(n).bits()) {
            visit(n, adj);
        }
    });
}

fn children<F: FnMut(&[u64])>(parents: &Level, mut emit: F) {
    let p = parents.n;
    let n = p + 1;
    let v = p;
    let mut pa = vec![0u64; p];
    let mut child = vec![0u64; n];
    for idx in 0..parents.len() {
        parents.get(idx, &mut pa);
        let pdeg: Vec<u32> = pa.iter().map(|r| r.count_ones()).collect();
        let gens = if p >= 2 {
            let keys = vertex_keys(p, &pa);
            canonical_form(p, &pa, &cells_by_key(VertexSet::full(p), &keys)).generators
        } else {
            Vec::new()
        };
        for s in 0u64..(1u64 << p) {
            let d = s.count_ones();
            let mut max_other = 0;
            for i in 0..p {
                max_other = max_other.max(pdeg[i] + (s >> i & 1) as u32);
            }
            if d < max_other {
                continue;
            }
            if !is_orbit_minimum(s, &gens) {
                continue;
            }
            child[..p].copy_from_slice(&pa);
            for i in 0..p {
                if s >> i & 1 == 1 {
                    child[i] |= 1 << v;
                }
            }
            child[v] = s;
            if d > max_other || accept_deletion(n, &child, v, VertexSet::full(n), &[]) {
                emit(&child);
            }
        }
    }
}

/// Whether `v` is, up to automorphism, the canonical deletion vertex among the
/// members of `pool`: the last vertex in canonical order among those with the
/// largest key. `fixed_cells` precede the pool cells in the colouring.
fn accept_deletion(n: usize, adj: &[u64], v: usize, pool: VertexSet, fixed_cells: &[VertexSet]) -> bool {
    let keys = vertex_keys(n, adj);
    let top = pool.iter().map(|u| keys[u]).max().unwrap_or(0);
    if keys[v] < top {
        return false;
    }
    if pool.iter().filter(|&u| keys[u] == top).count() == 1 {
        return true;
    }
    let mut cells: Vec<VertexSet> = fixed_cells.to_vec();
    cells.extend(cells_by_key(pool, &keys));
    let c: Canon = canonical_form(n, adj, &cells);
    c.same_orbit(v, c.order[n - 1])
}

/// Calls `visit(2k, adjacency)` once for every isomorphism class of connected
/// bipartite graphs with two colour classes of size `k`. In each emitted
/// labeling one class is `0..k`.
pub fn for_each_balanced_bipartite<F: FnMut(usize, &[u64])>(k: usize, mut visit: F) {
    assert!(2 * k <= GENERATION_BOUND.min(CANON_BOUND), "bipartite generation supports at most {GENERATION_BOUND} vertices");
    if k == 0 {
        return;
    }
    let a = VertexSet::full(k);
    // level j: side A = 0..k, side B = k..k+j; every B vertex has a neighbour
    let mut level = Level {
        n: k,
        rows: vec![0u16; k],
    };
    for j in 0..k {
        let n = k + j + 1;
        let last = j + 1 == k;
        let mut next = Level { n, rows: Vec::new() };
        bipartite_children(&level, k, |adj| {
            if !last {
                next.rows.extend(adj.iter().map(|&r| r as u16));
                return;
            }
            if !connected_within(adj, VertexSet::full(n).bits()) {
                return;
            }
            // the two colourings of one graph: keep the one with the smaller certificate
            let b = a.complement(n);
            let ab = canonical_form(n, adj, &[a, b]).cert;
            let ba = canonical_form(n, adj, &[b, a]).cert;
            if ab <= ba {
                visit(n, adj);
            }
        });
        level = next;
    }
}

fn bipartite_children<F: FnMut(&[u64])>(parents: &Level, k: usize, mut emit: F) {
    let p = parents.n;
    let n = p + 1;
    let v = p;
    let a = VertexSet::full(k);
    let b_old = VertexSet::full(p).difference(a);
    let mut pa = vec![0u64; p];
    let mut child = vec![0u64; n];
    for idx in 0..parents.len() {
        parents.get(idx, &mut pa);
        let max_b = b_old.iter().map(|u| pa[u].count_ones()).max().unwrap_or(0);
        let gens = {
            let keys = vertex_keys(p, &pa);
            let mut cells = cells_by_key(a, &keys);
            if !b_old.is_empty() {
                cells.extend(cells_by_key(b_old, &keys));
            }
            canonical_form(p, &pa, &cells).generators
        };
        let b_new = b_old.with(v);
        for s in 1u64..(1u64 << k) {
            let d = s.count_ones();
            if d < max_b || !is_orbit_minimum(s, &gens) {
                continue;
            }
            child[..p].copy_from_slice(&pa);
            for i in 0..k {
                if s >> i & 1 == 1 {
                    child[i] |= 1 << v;
                }
            }
            child[v] = s;
            let keys_a = {
                let keys = vertex_keys(n, &child);
                cells_by_key(a, &keys)
            };
            if d > max_b || accept_deletion(n, &child, v, b_new, &keys_a) {
                emit(&child);
            }
        }
    }
}

/// The simple graph with the given adjacency masks.
pub fn to_multigraph(n: usize, adj: &[u64]) -> Multigraph {
    Multigraph::from_adjacency(n, adj)
}

/// Every isomorphism class of connected graphs with `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for_each_connected_graph(n, |n, adj| out.push(to_multigraph(n, adj)));
    }
    out
}
