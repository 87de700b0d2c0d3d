//! Canonical labeling of small simple graphs with an ordered initial
//! colouring, by equitable refinement and individualization with pruning by
//! discovered automorphisms.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::vset::VertexSet;

/// Largest vertex count handled (the certificate packs the upper triangle of
/// the adjacency matrix into 120 bits).
pub const CANON_BOUND: usize = 16;

const MAXN: usize = CANON_BOUND;

type Perm = [u8; MAXN];

#[derive(Clone, Copy)]
struct Partition {
    lab: [u8; MAXN],
    /// For each cell start position, the cell length.
    size: [u8; MAXN],
    /// For each vertex, the start position of its cell.
    cell: [u8; MAXN],
}

/// Result of [`canonical_form`].
#[derive(Clone, Debug)]
pub struct Canon {
    /// Upper triangle of the canonically relabeled adjacency matrix.
    pub cert: u128,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Generators of the automorphism group (colour preserving).
    pub generators: Vec<Vec<usize>>,
    /// Least vertex of each vertex's orbit under the automorphism group.
    pub orbit: Vec<usize>,
}

impl Canon {
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbit[u] == self.orbit[v]
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    first: Option<(Perm, u128)>,
    best: Option<(Perm, u128)>,
    first_path: Vec<u8>,
    best_path: Vec<u8>,
    gens: Vec<Perm>,
}

/// Canonical form of the simple graph on `0..n` with adjacency masks `adj`,
/// where `cells` is an ordered colouring (each cell a nonempty vertex set;
/// together a partition of `0..n`). Isomorphisms must map each cell onto
/// the cell in the same position.
pub fn canonical_form(n: usize, adj: &[u64], cells: &[VertexSet]) -> Canon {
    assert!(n <= MAXN, "canonical_form supports at most {MAXN} vertices");
    let mut p = Partition {
        lab: [0; MAXN],
        size: [0; MAXN],
        cell: [0; MAXN],
    };
    let mut pos = 0;
    let mut queue = Vec::with_capacity(n);
    for c in cells {
        let start = pos;
        for v in *c {
            p.lab[pos] = v as u8;
            p.cell[v] = start as u8;
            pos += 1;
        }
        p.size[start] = (pos - start) as u8;
        queue.push(start as u8);
    }
    debug_assert_eq!(pos, n);
    let mut s = Search {
        n,
        adj,
        first: None,
        best: None,
        first_path: Vec::new(),
        best_path: Vec::new(),
        gens: Vec::new(),
    };
    if n == 0 {
        return Canon {
            cert: 0,
            order: Vec::new(),
            generators: Vec::new(),
            orbit: Vec::new(),
        };
    }
    s.refine(&mut p, &mut queue);
    let mut prefix = Vec::with_capacity(n);
    s.dfs(&p, &mut prefix);
    let (lab, cert) = s.best.expect("search visits at least one leaf");
    let orbit = orbits(n, &s.gens, &[]);
    Canon {
        cert,
        order: lab[..n].iter().map(|&v| v as usize).collect(),
        generators: s.gens.iter().map(|g| g[..n].iter().map(|&v| v as usize).collect()).collect(),
        orbit: orbit.iter().map(|&v| v as usize).collect(),
    }
}

/// Canonical form with the trivial colouring.
pub fn canonical_form_uncoloured(n: usize, adj: &[u64]) -> Canon {
    canonical_form(n, adj, &[VertexSet::full(n)])
}

/// Certificate of the underlying simple graph: equal certificates (with equal
/// vertex counts) mean isomorphic underlying simple graphs.
pub fn certificate(g: &Multigraph) -> Result<u128> {
    let n = g.vertex_count();
    if n > CANON_BOUND {
        return Err(Error::BoundExceeded {
            what: "canonical labeling",
            got: n,
            bound: CANON_BOUND,
        });
    }
    Ok(canonical_form_uncoloured(n, g.adjacency()).cert)
}

/// Orbits (as least representatives) of the group generated by those
/// generators fixing every vertex of `fixed`.
fn orbits(n: usize, gens: &[Perm], fixed: &[u8]) -> [u8; MAXN] {
    let mut parent = [0u8; MAXN];
    for (i, p) in parent.iter_mut().enumerate().take(n) {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; MAXN], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in gens {
        if fixed.iter().any(|&f| g[f as usize] != f) {
            continue;
        }
        for v in 0..n {
            let a = find(&mut parent, v as u8);
            let b = find(&mut parent, g[v]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut out = [0u8; MAXN];
    for (v, o) in out.iter_mut().enumerate().take(n) {
        *o = find(&mut parent, v as u8);
    }
    out
}

impl Search<'_> {
    fn refine(&self, p: &mut Partition, queue: &mut Vec<u8>) {
        let n = self.n;
        let mut head = 0;
        let mut in_queue = [false; MAXN];
        for &q in queue.iter() {
            in_queue[q as usize] = true;
        }
        while head < queue.len() {
            let ws = queue[head] as usize;
            head += 1;
            in_queue[ws] = false;
            let mut w = 0u64;
            for i in ws..ws + p.size[ws] as usize {
                w |= 1 << p.lab[i];
            }
            let mut s = 0;
            while s < n {
                let len = p.size[s] as usize;
                if len > 1 {
                    let mut counts = [0u8; MAXN];
                    let mut same = true;
                    for i in 0..len {
                        counts[i] = (self.adj[p.lab[s + i] as usize] & w).count_ones() as u8;
                        same &= counts[i] == counts[0];
                    }
                    if !same {
                        // stable sort of the cell by count
                        let mut items: [(u8, u8); MAXN] = [(0, 0); MAXN];
                        for i in 0..len {
                            items[i] = (counts[i], p.lab[s + i]);
                        }
                        items[..len].sort_by_key(|&(c, _)| c);
                        let mut start = s;
                        for i in 0..len {
                            p.lab[s + i] = items[i].1;
                            if i > 0 && items[i].0 != items[i - 1].0 {
                                p.size[start] = (s + i - start) as u8;
                                start = s + i;
                            }
                            p.cell[items[i].1 as usize] = start as u8;
                        }
                        p.size[start] = (s + len - start) as u8;
                        // queue every piece
                        let mut t = s;
                        while t < s + len {
                            if !in_queue[t] {
                                in_queue[t] = true;
                                queue.push(t as u8);
                            }
                            t += p.size[t] as usize;
                        }
                    }
                }
                s += p.size[s] as usize;
            }
        }
        queue.clear();
    }

    fn individualize(&self, p: &Partition, v: u8) -> Partition {
        let mut q = *p;
        let s = p.cell[v as usize] as usize;
        let len = p.size[s] as usize;
        let i = (s..s + len).find(|&i| q.lab[i] == v).expect("vertex in its cell");
        q.lab.swap(s, i);
        q.size[s] = 1;
        q.size[s + 1] = (len - 1) as u8;
        for j in s + 1..s + len {
            q.cell[q.lab[j] as usize] = (s + 1) as u8;
        }
        q.cell[v as usize] = s as u8;
        let mut queue = vec![s as u8];
        self.refine(&mut q, &mut queue);
        q
    }

    fn cert(&self, lab: &Perm) -> u128 {
        let n = self.n;
        let mut inv = [0u8; MAXN];
        for i in 0..n {
            inv[lab[i] as usize] = i as u8;
        }
        let mut cert = 0u128;
        for i in 0..n {
            let mut row = 0u64;
            let mut nb = self.adj[lab[i] as usize];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                row |= 1 << inv[u];
            }
            let width = n - 1 - i;
            if width > 0 {
                cert = cert << width | (row >> (i + 1)) as u128;
            }
        }
        cert
    }

    /// Returns `Some(level)` to unwind the search up to the node at depth
    /// `level`.
    fn dfs(&mut self, p: &Partition, prefix: &mut Vec<u8>) -> Option<usize> {
        let n = self.n;
        let target = {
            let mut s = 0;
            loop {
                if s >= n {
                    break None;
                }
                if p.size[s] > 1 {
                    break Some(s);
                }
                s += p.size[s] as usize;
            }
        };
        let Some(t) = target else {
            return self.leaf(p, prefix);
        };
        let len = p.size[t] as usize;
        let mut children: Vec<u8> = p.lab[t..t + len].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u8> = Vec::with_capacity(len);
        let mut orbit_cache: Option<(usize, [u8; MAXN])> = None;
        for &w in &children {
            if !explored.is_empty() {
                let fresh = orbit_cache.is_none_or(|(k, _)| k != self.gens.len());
                if fresh {
                    orbit_cache = Some((self.gens.len(), orbits(n, &self.gens, prefix)));
                }
                let orb = orbit_cache.as_ref().map(|(_, o)| o).expect("cache set");
                if explored.iter().any(|&x| orb[x as usize] == orb[w as usize]) {
                    continue;
                }
            }
            explored.push(w);
            let child = self.individualize(p, w);
            prefix.push(w);
            let jump = self.dfs(&child, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < prefix.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition, prefix: &[u8]) -> Option<usize> {
        let cert = self.cert(&p.lab);
        let Some((first_lab, first_cert)) = self.first else {
            self.first = Some((p.lab, cert));
            self.best = Some((p.lab, cert));
            self.first_path = prefix.to_vec();
            self.best_path = prefix.to_vec();
            return None;
        };
        if cert == first_cert {
            self.record(&first_lab, &p.lab);
            return Some(common_prefix(&self.first_path, prefix));
        }
        let (best_lab, best_cert) = self.best.expect("best set with first");
        if cert == best_cert {
            self.record(&best_lab, &p.lab);
            return Some(common_prefix(&self.best_path, prefix));
        }
        if cert > best_cert {
            self.best = Some((p.lab, cert));
            self.best_path = prefix.to_vec();
        }
        None
    }

    fn record(&mut self, from: &Perm, to: &Perm) {
        let mut g = [0u8; MAXN];
        for i in 0..self.n {
            g[from[i] as usize] = to[i];
        }
        if (0..self.n).any(|v| g[v] != v as u8) {
            self.gens.push(g);
        }
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
