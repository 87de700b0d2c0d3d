//! Named graphs and the splicing operation.
//!
//! Vertex numbering conventions:
//!
//! * `G_n`: `u_i` is vertex `i - 1` and `v_i` is vertex `n + i - 1`.
//! * `C_4^+`: `w = 0`, `a = 1`, `a' = 2`, `a'' = 3`; the edges `wa` and `wa''`
//!   are doubled, so `d(w) = 4` and `a'` is the unique vertex of degree 2.
//! * `H_n`: the splice of `G_n` at `u_2` with `C_4^+` at `w`. Vertices of
//!   `G_n - u_2` come first (in order), then `a, a', a''` at `2n - 1, 2n, 2n + 1`.
//! * `wheel(n)`: hub `0`, rim `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::graph::{build_graph, Edge, EdgeId, Multigraph};

/// Pairs the edges at `v` in `H` with the edges at `u` in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpliceMap {
    pub u: usize,
    pub v: usize,
    /// `(edge of ∂_H(v), edge of ∂_G(u))`.
    pub pairing: Vec<(EdgeId, EdgeId)>,
}

fn edges_at_sorted(g: &Multigraph, x: usize) -> Vec<Edge> {
    let mut es: Vec<Edge> = g.incident(x).copied().collect();
    es.sort_by_key(|e| (e.other(x), e.id));
    es
}

/// Pairs the edges at `u` and `v` by ascending opposite endpoint on both sides.
pub fn default_splice_map(g: &Multigraph, u: usize, h: &Multigraph, v: usize) -> Result<SpliceMap> {
    let eg = edges_at_sorted(g, u);
    let eh = edges_at_sorted(h, v);
    if eg.len() != eh.len() {
        return Err(precondition(format!(
            "splice degree mismatch: d_G(u) = {}, d_H(v) = {}",
            eg.len(),
            eh.len()
        )));
    }
    Ok(SpliceMap {
        u,
        v,
        pairing: eh.iter().zip(&eg).map(|(a, b)| (a.id, b.id)).collect(),
    })
}

/// Every bijection between `∂_H(v)` and `∂_G(u)`.
pub fn all_splice_maps(g: &Multigraph, u: usize, h: &Multigraph, v: usize) -> Result<Vec<SpliceMap>> {
    let base = default_splice_map(g, u, h, v)?;
    let hs: Vec<EdgeId> = base.pairing.iter().map(|p| p.0).collect();
    let gs: Vec<EdgeId> = base.pairing.iter().map(|p| p.1).collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..gs.len()).collect();
    loop {
        out.push(SpliceMap {
            u,
            v,
            pairing: hs.iter().zip(&perm).map(|(&a, &i)| (a, gs[i])).collect(),
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `(G(u) ⊙ H(v))_θ`: the union of `G - u` and `H - v` plus one edge per
/// pairing entry joining the surviving ends.
///
/// Vertices of `G - u` keep their relative order and come first, followed by
/// those of `H - v`. Edge ids are fresh: the edges of `G - u`, then of
/// `H - v`, then the joining edges in pairing order.
pub fn splice(g: &Multigraph, h: &Multigraph, m: &SpliceMap) -> Result<Multigraph> {
    let (u, v) = (m.u, m.v);
    if u >= g.vertex_count() || v >= h.vertex_count() {
        return Err(precondition("splicing vertex out of range"));
    }
    if g.degree(u) != h.degree(v) {
        return Err(precondition(format!(
            "splice degree mismatch: d_G(u) = {}, d_H(v) = {}",
            g.degree(u),
            h.degree(v)
        )));
    }
    if m.pairing.len() != g.degree(u) {
        return Err(precondition("splice pairing is not a bijection"));
    }
    let mut seen_h = Vec::new();
    let mut seen_g = Vec::new();
    for &(eh, eg) in &m.pairing {
        let (a, b) = (h.edge(eh)?, g.edge(eg)?);
        if !a.touches(v) || !b.touches(u) || seen_h.contains(&eh) || seen_g.contains(&eg) {
            return Err(precondition("splice pairing is not a bijection between the two stars"));
        }
        seen_h.push(eh);
        seen_g.push(eg);
    }
    let gn = g.vertex_count() - 1;
    let map_g = |x: usize| if x < u { x } else { x - 1 };
    let map_h = |y: usize| gn + if y < v { y } else { y - 1 };
    let mut pairs = Vec::new();
    pairs.extend(g.edges().iter().filter(|e| !e.touches(u)).map(|e| (map_g(e.u), map_g(e.v))));
    pairs.extend(h.edges().iter().filter(|e| !e.touches(v)).map(|e| (map_h(e.u), map_h(e.v))));
    for &(eh, eg) in &m.pairing {
        let y = h.edge(eh)?.other(v);
        let x = g.edge(eg)?.other(u);
        pairs.push((map_g(x), map_h(y)));
    }
    build_graph(gn + h.vertex_count() - 1, &pairs)
}

/// The named families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gn,
    Hn,
    C4Plus,
    K4,
    Prism,
    R8,
    Wheel,
    Cycle,
    K33,
    K2,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Gn,
        Family::Hn,
        Family::C4Plus,
        Family::K4,
        Family::Prism,
        Family::R8,
        Family::Wheel,
        Family::Cycle,
        Family::K33,
        Family::K2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gn => "gn",
            Family::Hn => "hn",
            Family::C4Plus => "c4plus",
            Family::K4 => "k4",
            Family::Prism => "prism",
            Family::R8 => "r8",
            Family::Wheel => "wheel",
            Family::Cycle => "cycle",
            Family::K33 => "k33",
            Family::K2 => "k2",
        }
    }

    pub fn takes_parameter(self) -> bool {
        matches!(self, Family::Gn | Family::Hn | Family::Wheel | Family::Cycle)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                precondition(format!("unknown family `{s}`; known: {}", known.join(", ")))
            })
    }
}

/// `R_8`: the cubic brick on 8 vertices with a triangle `0 1 2` whose only
/// removable edge is `34`. Among the five connected cubic graphs on 8
/// vertices it is the one simple near-bipartite brick with no two
/// nonadjacent removable edges.
const R8_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 4),
    (2, 5),
    (3, 4),
    (3, 6),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 7),
];

const C4PLUS_EDGES: [(usize, usize); 6] = [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (3, 0)];

pub fn gen_family(family: Family, n: Option<usize>) -> Result<Multigraph> {
    let need = |min: usize| -> Result<usize> {
        match n {
            Some(k) if k >= min => Ok(k),
            Some(k) => Err(precondition(format!("{family}: n = {k} is below the minimum {min}"))),
            None => Err(precondition(format!("{family} needs a parameter n"))),
        }
    };
    match family {
        Family::Gn => gn(need(3)?),
        Family::Hn => hn(need(3)?),
        Family::Wheel => {
            let k = need(3)?;
            if k % 2 == 0 {
                return Err(precondition(format!("wheel rim length must be odd, got {k}")));
            }
            wheel(k)
        }
        Family::Cycle => cycle(need(2)?),
        Family::C4Plus => build_graph(4, &C4PLUS_EDGES),
        Family::K4 => complete(4),
        Family::Prism => prism(),
        Family::R8 => build_graph(8, &R8_EDGES),
        Family::K33 => complete_bipartite(3, 3),
        Family::K2 => build_graph(2, &[(0, 1)]),
    }
}

/// Two paths `u_1..u_n`, `v_1..v_n` plus `u_1v_1`, `u_nv_n` and the crossing
/// edges `u_iv_{i+1}`, `v_iu_{i+1}`.
fn gn(n: usize) -> Result<Multigraph> {
    let u = |i: usize| i - 1;
    let v = |i: usize| n + i - 1;
    let mut pairs = Vec::with_capacity(4 * n - 2);
    pairs.extend((1..n).map(|i| (u(i), u(i + 1))));
    pairs.extend((1..n).map(|i| (v(i), v(i + 1))));
    pairs.push((u(1), v(1)));
    pairs.push((u(n), v(n)));
    for i in 1..n {
        pairs.push((u(i), v(i + 1)));
        pairs.push((v(i), u(i + 1)));
    }
    build_graph(2 * n, &pairs)
}

fn hn(n: usize) -> Result<Multigraph> {
    let g = gn(n)?;
    let c = build_graph(4, &C4PLUS_EDGES)?;
    let m = default_splice_map(&g, 1, &c, 0)?;
    splice(&g, &c, &m)
}

pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(precondition("cycle needs at least 2 vertices"));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build_graph(n, &pairs)
}

pub fn complete(n: usize) -> Result<Multigraph> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    build_graph(n, &pairs)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Multigraph> {
    let mut pairs = Vec::new();
    for i in 0..a {
        for j in 0..b {
            pairs.push((i, a + j));
        }
    }
    build_graph(a + b, &pairs)
}

/// Complement of the 6-cycle `0-1-2-3-4-5`: triangles `024`, `135`, rungs
/// `03`, `14`, `25`.
fn prism() -> Result<Multigraph> {
    build_graph(
        6,
        &[(0, 2), (2, 4), (4, 0), (1, 3), (3, 5), (5, 1), (0, 3), (1, 4), (2, 5)],
    )
}

fn wheel(rim: usize) -> Result<Multigraph> {
    let mut pairs: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    pairs.extend((1..=rim).map(|i| (i, i % rim + 1)));
    build_graph(rim + 1, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    #[test]
    fn gn_shape() {
        for n in 3..=8 {
            let g = gen_family(Family::Gn, Some(n)).unwrap();
            assert_eq!(g.vertex_count(), 2 * n);
            assert_eq!(g.edge_count(), 4 * n - 2);
            assert!(g.is_simple());
            for x in 0..2 * n {
                let end = x == 0 || x == n - 1 || x == n || x == 2 * n - 1;
                assert_eq!(g.degree(x), if end { 3 } else { 4 });
            }
        }
    }

    #[test]
    fn hn_shape() {
        for n in 3..=8 {
            let h = gen_family(Family::Hn, Some(n)).unwrap();
            assert_eq!(h.vertex_count(), 2 * n + 2);
            assert_eq!(h.count_degree(2), 1);
            assert_eq!(h.degree(2 * n), 2);
            assert!(h.is_simple());
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(gen_family(Family::Gn, Some(2)).is_err());
        assert!(gen_family(Family::Gn, None).is_err());
        assert!(gen_family(Family::Wheel, Some(4)).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("K33".parse::<Family>().unwrap(), Family::K33);
    }

    #[test]
    fn splice_two_c4_gives_c6() {
        let c4 = cycle(4).unwrap();
        for m in all_splice_maps(&c4, 0, &c4, 0).unwrap() {
            let s = splice(&c4, &c4, &m).unwrap();
            assert!(are_isomorphic(&s, &cycle(6).unwrap()).unwrap());
        }
    }

    #[test]
    fn splice_two_k4_gives_prism_for_every_bijection() {
        let k4 = complete(4).unwrap();
        let maps = all_splice_maps(&k4, 0, &k4, 0).unwrap();
        assert_eq!(maps.len(), 6);
        let p = prism().unwrap();
        for m in maps {
            assert!(are_isomorphic(&splice(&k4, &k4, &m).unwrap(), &p).unwrap());
        }
    }

    #[test]
    fn splice_rejects_degree_mismatch() {
        let k4 = complete(4).unwrap();
        let c4 = cycle(4).unwrap();
        assert!(default_splice_map(&k4, 0, &c4, 0).is_err());
        let m = default_splice_map(&k4, 0, &k4, 0).unwrap();
        let mut bad = m.clone();
        bad.pairing[1].1 = bad.pairing[0].1;
        assert!(splice(&k4, &k4, &bad).is_err());
    }

    #[test]
    fn prism_is_complement_of_c6() {
        let p = prism().unwrap();
        let c6 = cycle(6).unwrap();
        for i in 0..6 {
            for j in i + 1..6 {
                assert_ne!(p.adjacent(i, j), c6.adjacent(i, j));
            }
        }
    }
}
