use serde::Serialize;

use super::Graph;

/// Bipartition `(X, Y)`; `X` holds the lowest-labeled vertex of every component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl Bipartition {
    pub fn in_x(&self, v: usize) -> bool {
        self.x.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub bipartite: Option<Bipartition>,
    pub tree: bool,
    pub forest: bool,
    pub connected: bool,
    /// Maximum degree at most four.
    pub chemical: bool,
    pub star: bool,
    pub complete: bool,
    pub has_isolated_vertex: bool,
}

/// Connected components, each sorted, ordered by their lowest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn two_coloring(g: &Graph) -> Option<Bipartition> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for root in 0..g.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = vec![root];
        while let Some(u) = queue.pop() {
            let su = side[u].unwrap();
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (x, y) = (0..g.n()).partition(|&v| side[v] == Some(false));
    Some(Bipartition { x, y })
}

pub fn structural_predicates(g: &Graph) -> StructuralPredicates {
    let n = g.n();
    let c = components(g).len();
    let connected = c <= 1;
    let forest = g.m() + c == n;
    let tree = connected && forest && n > 0;
    StructuralPredicates {
        bipartite: two_coloring(g),
        tree,
        forest,
        connected,
        chemical: g.max_degree() <= 4,
        star: tree && n >= 2 && g.max_degree() == n - 1,
        complete: 2 * g.m() == n * n.saturating_sub(1),
        has_isolated_vertex: g.has_isolated_vertex(),
    }
}
