use serde::Serialize;

use super::{simple_cycles, BitIter, Cycle, Graph};

/// Vertex-disjoint union of single edges and cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LinearSubgraph {
    pub edge_components: Vec<(usize, usize)>,
    pub cycle_components: Vec<Cycle>,
}

impl LinearSubgraph {
    /// Number of single-edge components.
    pub fn p1(&self) -> usize {
        self.edge_components.len()
    }

    /// Number of cycle components.
    pub fn p2(&self) -> usize {
        self.cycle_components.len()
    }

    /// Number of covered vertices.
    pub fn order(&self) -> usize {
        2 * self.p1() + self.cycle_components.iter().map(Cycle::len).sum::<usize>()
    }

    pub fn vertex_mask(&self) -> u64 {
        let edges = self.edge_components.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v);
        self.cycle_components.iter().fold(edges, |m, c| m | c.vertex_mask())
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        BitIter(self.vertex_mask())
    }

    /// True when every cycle component has even length.
    pub fn is_evenly_linear(&self) -> bool {
        self.cycle_components.iter().all(Cycle::is_even)
    }
}

/// Every linear subgraph of `g`, of every order, each exactly once.
///
/// Components are chosen by their minimum vertex in increasing order, so
/// each subgraph has a single construction path.
pub fn enumerate_all_linear_subgraphs(g: &Graph) -> Vec<LinearSubgraph> {
    let cycles = simple_cycles(g, usize::MAX).expect("unbounded cycle enumeration");
    let mut by_min: Vec<Vec<(u64, &Cycle)>> = vec![Vec::new(); g.n()];
    for c in &cycles {
        by_min[c.vertices()[0]].push((c.vertex_mask(), c));
    }
    let mut out = Vec::new();
    let mut current = LinearSubgraph::default();
    build(g, &by_min, 0, 0, &mut current, &mut out);
    out
}

fn build(
    g: &Graph,
    by_min: &[Vec<(u64, &Cycle)>],
    v: usize,
    used: u64,
    current: &mut LinearSubgraph,
    out: &mut Vec<LinearSubgraph>,
) {
    if v == g.n() {
        out.push(current.clone());
        return;
    }
    let next = v + 1;
    if used & (1 << v) != 0 {
        build(g, by_min, next, used, current, out);
        return;
    }
    build(g, by_min, next, used, current, out);
    let higher = !((1u64 << v) | ((1u64 << v) - 1));
    for w in BitIter(g.neighbor_mask(v) & !used & higher) {
        current.edge_components.push((v, w));
        build(g, by_min, next, used | 1 << v | 1 << w, current, out);
        current.edge_components.pop();
    }
    for &(mask, c) in &by_min[v] {
        if mask & used == 0 {
            current.cycle_components.push(c.clone());
            build(g, by_min, next, used | mask, current, out);
            current.cycle_components.pop();
        }
    }
}

/// The linear subgraphs of `g` covering exactly `i` vertices.
pub fn enumerate_linear_subgraphs(g: &Graph, i: usize) -> Vec<LinearSubgraph> {
    enumerate_all_linear_subgraphs(g)
        .into_iter()
        .filter(|l| l.order() == i)
        .collect()
}

/// The linear subgraphs on `i` vertices whose cycles all have even length.
pub fn enumerate_evenly_linear_subgraphs(g: &Graph, i: usize) -> Vec<LinearSubgraph> {
    enumerate_linear_subgraphs(g, i)
        .into_iter()
        .filter(LinearSubgraph::is_evenly_linear)
        .collect()
}
