use serde::Serialize;

use super::{BitIter, Graph, OrientedGraph};
use crate::{Error, Result};

/// A simple cycle stored in canonical form: the rotation starting at its
/// minimum vertex, proceeding toward the smaller of that vertex's two cycle
/// neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence given in any rotation and direction.
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(vertices.len() >= 3, "a cycle has at least 3 vertices");
        let k = vertices.len();
        let start = (0..k).min_by_key(|&i| vertices[i]).unwrap();
        let next = vertices[(start + 1) % k];
        let prev = vertices[(start + k - 1) % k];
        let seq = if next < prev {
            (0..k).map(|i| vertices[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| vertices[(start + k - i) % k]).collect()
        };
        Cycle(seq)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.0.len() % 2 == 0
    }

    pub fn vertex_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Consecutive pairs along the stored routing, closing back to the start.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    /// The same cycle walked in the opposite direction (not canonical).
    pub fn reversed_routing(&self) -> Vec<usize> {
        self.0.iter().rev().copied().collect()
    }
}

/// Orientation class of an even cycle relative to an oriented graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CycleOrientationClass {
    EvenlyOriented,
    OddlyOriented,
}

/// Number of arcs agreeing with the routing `route[0] -> route[1] -> ...`.
pub(crate) fn forward_arcs(og: &OrientedGraph, route: &[usize]) -> Result<usize> {
    let k = route.len();
    let mut forward = 0;
    for i in 0..k {
        let (a, b) = (route[i], route[(i + 1) % k]);
        match og.arc_sign(a, b) {
            0 => return Err(Error::NotAnEdge(a, b)),
            1 => forward += 1,
            _ => {}
        }
    }
    Ok(forward)
}

/// Classifies an even cycle by the parity of its forward arcs.
pub fn classify_cycle(og: &OrientedGraph, c: &Cycle) -> Result<CycleOrientationClass> {
    classify_route(og, c.vertices())
}

/// Like [`classify_cycle`] for a routing given as a raw vertex sequence.
pub fn classify_route(og: &OrientedGraph, route: &[usize]) -> Result<CycleOrientationClass> {
    if route.len() % 2 == 1 {
        return Err(Error::OddCycle);
    }
    Ok(if forward_arcs(og, route)? % 2 == 0 {
        CycleOrientationClass::EvenlyOriented
    } else {
        CycleOrientationClass::OddlyOriented
    })
}

/// Calls `visit` on every simple cycle whose minimum vertex is `start`, each
/// exactly once and in canonical routing.
pub(crate) fn cycles_from(g: &Graph, start: usize, allowed: u64, visit: &mut impl FnMut(&[usize])) {
    let allowed = allowed & !((1u64 << start) | ((1u64 << start) - 1));
    let mut path = vec![start];
    extend(g, start, allowed, 1 << start, &mut path, visit);
}

fn extend(
    g: &Graph,
    start: usize,
    allowed: u64,
    used: u64,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    let nbrs = g.neighbor_mask(last);
    if path.len() >= 3 && nbrs & (1 << start) != 0 && path[1] < last {
        visit(path);
    }
    for w in BitIter(nbrs & allowed & !used) {
        path.push(w);
        extend(g, start, allowed, used | 1 << w, path, visit);
        path.pop();
    }
}

/// All simple cycles of `g`, canonical and sorted by (length, vertices).
///
/// Fails with [`Error::InstanceTooLarge`] once more than `limit` cycles have
/// been found.
pub fn simple_cycles(g: &Graph, limit: usize) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let mut overflow = false;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    for s in 0..g.n() {
        cycles_from(g, s, all, &mut |p| {
            if out.len() >= limit {
                overflow = true;
            } else {
                out.push(Cycle(p.to_vec()));
            }
        });
        if overflow {
            return Err(Error::InstanceTooLarge(format!("more than {limit} simple cycles")));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}
