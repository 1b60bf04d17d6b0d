#![allow(dead_code)]

use proptest::prelude::*;
use skew_randic::{Graph, OrientedGraph};

/// A graph on `n` vertices chosen by an edge bitmask over all pairs.
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> k & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn graph(n_min: usize, n_max: usize) -> impl Strategy<Value = Graph> {
    (n_min..=n_max, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

pub fn oriented(n_min: usize, n_max: usize) -> impl Strategy<Value = OrientedGraph> {
    (graph(n_min, n_max), any::<u128>()).prop_map(|(g, mask)| OrientedGraph::from_mask(g, mask))
}

/// Joins every isolated vertex to its successor (cyclically).
pub fn without_isolated(g: Graph) -> Graph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for v in 0..n {
        if g.degree(v) == 0 && n > 1 {
            let w = if v + 1 < n { v + 1 } else { 0 };
            let e = (v.min(w), v.max(w));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn oriented_no_isolated(n_min: usize, n_max: usize) -> impl Strategy<Value = OrientedGraph> {
    (graph(n_min.max(2), n_max), any::<u128>())
        .prop_map(|(g, mask)| OrientedGraph::from_mask(without_isolated(g), mask))
}
