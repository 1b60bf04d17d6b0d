//! Execution helpers for sweeps over families and orientation spaces.

use std::ops::Range;

use crate::graph::{components, Graph};
use crate::{Error, Result};

/// How a sweep is executed. Without the `parallel` feature both variants run
/// sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Maps `f` over `items`, preserving order.
pub fn map_items<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Folds over an index range and merges partial results with `reduce`,
/// which must be associative.
pub fn fold_range<A, Id, F, R>(exec: Exec, range: Range<u64>, identity: Id, fold: F, reduce: R) -> A
where
    A: Send,
    Id: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().fold(&identity, &fold).reduce(&identity, &reduce)
        }
        _ => {
            let _ = &reduce;
            range.fold(identity(), fold)
        }
    }
}

/// Largest number of free edge directions enumerated in one space.
pub const MAX_FREE_EDGES: usize = 30;

/// Indexable set of orientations of one graph.
///
/// With switching reduction the edges of a BFS spanning forest keep their
/// low-to-high direction, leaving one orientation per switching class;
/// otherwise every edge is free.
#[derive(Clone, Debug)]
pub struct OrientationSpace {
    m: usize,
    free_edges: Vec<usize>,
    reduced: bool,
}

impl OrientationSpace {
    pub fn new(g: &Graph, switch_reduction: bool) -> Result<Self> {
        let free_edges: Vec<usize> = if switch_reduction {
            let forest = spanning_forest_edges(g);
            (0..g.m()).filter(|e| !forest.contains(e)).collect()
        } else {
            (0..g.m()).collect()
        };
        if free_edges.len() > MAX_FREE_EDGES {
            return Err(Error::InstanceTooLarge(format!(
                "{} free edge directions (limit {MAX_FREE_EDGES})",
                free_edges.len()
            )));
        }
        Ok(OrientationSpace { m: g.m(), free_edges, reduced: switch_reduction })
    }

    pub fn len(&self) -> u64 {
        1u64 << self.free_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Reversal flags of the `index`-th orientation.
    pub fn reversed(&self, index: u64) -> Vec<bool> {
        let mut out = vec![false; self.m];
        for (bit, &e) in self.free_edges.iter().enumerate() {
            out[e] = index >> bit & 1 == 1;
        }
        out
    }
}

/// Edge indices of the BFS spanning forest rooted at each component's lowest vertex.
pub fn spanning_forest_edges(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for comp in components(g) {
        let root = comp[0];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    out.push(g.edge_index(u, w).unwrap());
                    queue.push_back(w);
                }
            }
        }
    }
    out.sort_unstable();
    out
}
