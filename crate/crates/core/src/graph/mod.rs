//! Simple graphs, oriented graphs and the combinatorial structures built on
//! them: simple cycles, linear subgraphs and structural predicates.

pub(crate) mod cycles;
mod io;
mod linear;
mod predicates;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use cycles::{classify_cycle, classify_route, simple_cycles, Cycle, CycleOrientationClass};
pub use io::{parse_graph, parse_oriented, write_graph, write_oriented};
pub use linear::{
    enumerate_all_linear_subgraphs, enumerate_evenly_linear_subgraphs,
    enumerate_linear_subgraphs, LinearSubgraph,
};
pub use predicates::{components, structural_predicates, Bipartition, StructuralPredicates};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; the
/// position of an edge in [`Graph::edges`] is its edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u64>,
    degrees: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Largest supported order; matrices are dense and adjacency rows are `u64`.
    pub const MAX_ORDER: usize = 64;

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > Self::MAX_ORDER {
            return Err(Error::OrderTooLarge { n, max: Self::MAX_ORDER });
        }
        let mut adjacency = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adjacency[u] & (1 << v) != 0 {
                return Err(Error::DuplicateEdge(u, v));
            }
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
            list.push((u, v));
        }
        list.sort_unstable();
        let degrees = adjacency.iter().map(|row| row.count_ones() as usize).collect();
        Ok(Graph { n, edges: list, adjacency, degrees })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph")
    }

    /// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle")
    }

    /// Star with center 0 on `n` vertices.
    pub fn star(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (0, v))).expect("star")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::new(a + b, edges).expect("complete bipartite graph")
    }

    /// Disjoint union, with the vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::new(self.n + other.n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Adjacency row of `v` as a bitset.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adjacency[v])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u] & (1 << v) != 0
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.degrees.iter().any(|&d| d == 0)
    }
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A graph together with one direction for every edge.
///
/// `reversed[e]` is `false` when edge `e = (u, v)`, `u < v`, is the arc
/// `u -> v` and `true` when it is `v -> u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    base: Graph,
    reversed: Vec<bool>,
}

impl OrientedGraph {
    /// Builds an oriented graph from a list of arcs `(tail, head)`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let base = Graph::new(n, arcs.iter().copied())?;
        let mut reversed = vec![false; base.m()];
        for &(tail, head) in &arcs {
            let e = base.edge_index(tail, head).expect("edge present");
            reversed[e] = tail > head;
        }
        Ok(OrientedGraph { base, reversed })
    }

    pub fn with_reversals(base: Graph, reversed: Vec<bool>) -> Self {
        assert_eq!(reversed.len(), base.m(), "one direction per edge");
        OrientedGraph { base, reversed }
    }

    /// Orientation encoded as a bitmask over edge indices (bit set = reversed).
    pub fn from_mask(base: Graph, mask: u128) -> Self {
        assert!(base.m() <= 128, "mask encoding supports at most 128 edges");
        let reversed = (0..base.m()).map(|e| mask >> e & 1 == 1).collect();
        OrientedGraph { base, reversed }
    }

    /// Every arc directed from the lower to the higher label.
    pub fn low_to_high(base: Graph) -> Self {
        let reversed = vec![false; base.m()];
        OrientedGraph { base, reversed }
    }

    /// Cyclic orientation `0 -> 1 -> ... -> n-1 -> 0` of the cycle `C_n`.
    pub fn directed_cycle(n: usize) -> Self {
        Self::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).expect("directed cycle")
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn reversed(&self) -> &[bool] {
        &self.reversed
    }

    pub fn mask(&self) -> u128 {
        assert!(self.base.m() <= 128, "mask encoding supports at most 128 edges");
        self.reversed
            .iter()
            .enumerate()
            .fold(0u128, |acc, (e, &r)| acc | (u128::from(r) << e))
    }

    /// Arcs as `(tail, head)`, in edge-index order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.base
            .edges()
            .iter()
            .zip(&self.reversed)
            .map(|(&(u, v), &r)| if r { (v, u) } else { (u, v) })
    }

    /// `+1` if `u -> v` is an arc, `-1` if `v -> u` is, `0` otherwise.
    pub fn arc_sign(&self, u: usize, v: usize) -> i8 {
        match self.base.edge_index(u, v) {
            None => 0,
            Some(e) => {
                let forward = (u < v) != self.reversed[e];
                if forward {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Flips the direction of edge `e`.
    pub fn flip_edge(&mut self, e: usize) {
        self.reversed[e] = !self.reversed[e];
    }
}
