//! Dense undirected simple graphs.
//!
//! Adjacency is stored as bit-packed rows. Every constructor and combinator
//! returns a symmetric matrix with an empty diagonal; loops and repeated
//! edges are rejected at construction.

mod graph6;

pub use graph6::{g6_decode, g6_encode, G6_HEADER, G6_MAX_VERTICES};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let words = n.div_ceil(WORD);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list. Loops, repeated edges and
    /// out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::invalid(format!("repeated edge ({u}, {v})")));
            }
            g.set(u, v, true);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.bits[u * self.words + v / WORD];
        if on {
            *w |= 1 << (v % WORD);
        } else {
            *w &= !(1 << (v % WORD));
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize, on: bool) {
        debug_assert_ne!(u, v);
        self.set_bit(u, v, on);
        self.set_bit(v, u, on);
    }

    /// Flips the pair `{u, v}`; panics on `u == v`.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "cannot toggle a loop");
        let on = !self.has_edge(u, v);
        self.set(u, v, on);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (u, v) in self.edges() {
            count += self
                .row(u)
                .iter()
                .zip(self.row(v))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>();
        }
        count / 3
    }

    /// Row-major `n × n` adjacency matrix as floats.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for u in 0..n {
            for v in 0..n {
                if self.has_edge(u, v) {
                    a[u * n + v] = 1.0;
                }
            }
        }
        a
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::invalid("not a permutation of the vertex set"));
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v], true);
        }
        Ok(g)
    }

    /// Checks the structural invariants (symmetric, loop-free, no stray bits).
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u))
                && (self.n..self.words * WORD).all(|v| self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 0)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match g6_encode(self) {
            Ok(s) => write!(f, "Graph({s:?})"),
            Err(_) => write!(f, "Graph(n = {}, m = {})", self.n, self.edge_count()),
        }
    }
}

/// Serialized as its graph6 string.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let text = g6_encode(self).map_err(serde::ser::Error::custom)?;
        ser.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        g6_decode(text.as_bytes()).map_err(serde::de::Error::custom)
    }
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.set(u, v, true);
        }
    }
    Ok(g)
}

/// The cycle `C_n` with edges `{i, i + 1 mod n}`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Vertices of `g` come first, then those of `h`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n + h.n).expect("non-empty");
    for (u, v) in g.edges() {
        out.set(u, v, true);
    }
    for (u, v) in h.edges() {
        out.set(g.n + u, g.n + v, true);
    }
    out
}

pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n).expect("non-empty");
    for u in 0..g.n {
        for v in (u + 1)..g.n {
            if !g.has_edge(u, v) {
                out.set(u, v, true);
            }
        }
    }
    out
}

/// Cartesian product; vertex `(a, x)` has index `a · |h| + x`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n;
    let mut out = Graph::empty(g.n * nh).expect("non-empty");
    for a in 0..g.n {
        for (x, y) in h.edges() {
            out.set(a * nh + x, a * nh + y, true);
        }
    }
    for (a, b) in g.edges() {
        for x in 0..nh {
            out.set(a * nh + x, b * nh + x, true);
        }
    }
    out
}

/// Closed blowup `G^[t]`: each vertex becomes a `t`-clique and each edge a
/// `K_{t,t}`. Vertex `(v, a)` has index `v · t + a`.
pub fn closed_blowup_graph(g: &Graph, t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::invalid("blowup factor t must be at least 1"));
    }
    let mut out = Graph::empty(g.n * t)?;
    for v in 0..g.n {
        for a in 0..t {
            for b in (a + 1)..t {
                out.set(v * t + a, v * t + b, true);
            }
        }
    }
    for (v, w) in g.edges() {
        for a in 0..t {
            for b in 0..t {
                out.set(v * t + a, w * t + b, true);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if it.next().unwrap() {
                            g.set(u, v, true);
                        }
                    }
                }
                g
            })
        })
    }

    #[test]
    fn complete_small() {
        assert_eq!(complete(1).unwrap().edge_count(), 0);
        assert_eq!(complete(3).unwrap().edge_count(), 3);
        assert!(complete(0).is_err());
    }

    #[test]
    fn cycle_rejects_short() {
        assert!(cycle(2).is_err());
        let c6 = cycle(6).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert_eq!(c6.regular_degree(), Some(2));
    }

    #[test]
    fn from_edges_rejects_loops_and_repeats() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn union_of_singletons_is_empty() {
        let k1 = complete(1).unwrap();
        let u = disjoint_union(&k1, &k1);
        assert_eq!(u.n(), 2);
        assert_eq!(u.edge_count(), 0);
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = complement(&complete(5).unwrap());
        assert_eq!(g, Graph::empty(5).unwrap());
    }

    #[test]
    fn product_with_k1_is_identity() {
        let g = cycle(5).unwrap();
        let k1 = complete(1).unwrap();
        assert_eq!(cartesian_product(&k1, &g), g);
    }

    #[test]
    fn blowup_identities() {
        let g = cycle(5).unwrap();
        assert_eq!(closed_blowup_graph(&g, 1).unwrap(), g);
        assert_eq!(
            closed_blowup_graph(&complete(1).unwrap(), 4).unwrap(),
            complete(4).unwrap()
        );
        assert!(closed_blowup_graph(&g, 0).is_err());
        // vertex (v, a) -> v * t + a
        let b = closed_blowup_graph(&g, 3).unwrap();
        assert!(b.has_edge(2, 3)); // (0, 2) ~ (1, 0)
        assert!(!b.has_edge(0, 2 * 3 + 1));
    }

    #[test]
    fn triangles() {
        assert_eq!(complete(4).unwrap().triangle_count(), 4);
        assert_eq!(cycle(6).unwrap().triangle_count(), 0);
    }

    #[test]
    fn bits_beyond_64_vertices() {
        let g = cycle(130).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(63, 64));
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_well_formed());
    }

    proptest! {
        #[test]
        fn combinators_stay_simple(g in arb_graph(7), h in arb_graph(5), t in 1usize..4) {
            prop_assert!(complement(&g).is_well_formed());
            prop_assert!(disjoint_union(&g, &h).is_well_formed());
            prop_assert!(cartesian_product(&g, &h).is_well_formed());
            prop_assert!(closed_blowup_graph(&g, t).unwrap().is_well_formed());
        }

        #[test]
        fn complement_is_involution(g in arb_graph(10)) {
            prop_assert_eq!(complement(&complement(&g)), g);
        }

        #[test]
        fn blowup_of_regular_is_regular(d_graph in 3usize..9, t in 1usize..5) {
            let g = cycle(d_graph).unwrap();
            let b = closed_blowup_graph(&g, t).unwrap();
            prop_assert_eq!(b.regular_degree(), Some(t * 2 + t - 1));
        }
    }
}
