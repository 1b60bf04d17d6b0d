//! Non-isomorphic small graphs by family.
//!
//! General graphs are built level by level, adding one edge at a time and
//! keeping one representative per isomorphism class via a canonical code:
//! the minimum upper-triangle adjacency encoding over all vertex orderings
//! that respect a color-refinement partition. Trees are grown by leaf
//! attachment and deduplicated with the AHU center encoding.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{structural_predicates, Graph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Trees,
    Forests,
    Connected,
    /// Connected bipartite graphs.
    Bipartite,
    ChemicalTrees,
    /// All simple graphs, isolated vertices included.
    Graphs,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Trees,
        Family::Forests,
        Family::Connected,
        Family::Bipartite,
        Family::ChemicalTrees,
        Family::Graphs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Trees => "trees",
            Family::Forests => "forests",
            Family::Connected => "connected",
            Family::Bipartite => "bipartite",
            Family::ChemicalTrees => "chemical-trees",
            Family::Graphs => "graphs",
        }
    }

    /// Largest order the generator accepts.
    pub fn max_order(self) -> usize {
        match self {
            Family::Trees | Family::ChemicalTrees => 16,
            Family::Forests => 12,
            Family::Connected | Family::Bipartite | Family::Graphs => 8,
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        let p = structural_predicates(g);
        match self {
            Family::Trees => p.tree,
            Family::Forests => p.forest,
            Family::Connected => p.connected && g.n() > 0,
            Family::Bipartite => p.connected && g.n() > 0 && p.bipartite.is_some(),
            Family::ChemicalTrees => p.tree && p.chemical,
            Family::Graphs => true,
        }
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
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unsupported family {s:?}")))
    }
}

/// One representative per isomorphism class of `family` on exactly `n` vertices.
pub fn generate_family(family: Family, n: usize) -> Result<Vec<Graph>> {
    if n > family.max_order() {
        return Err(Error::InstanceTooLarge(format!(
            "family {family} is generated up to n = {}, requested {n}",
            family.max_order()
        )));
    }
    Ok(match family {
        Family::Trees => trees(n),
        Family::ChemicalTrees => trees(n).into_iter().filter(|t| t.max_degree() <= 4).collect(),
        Family::Forests => forests(n),
        Family::Graphs => all_graphs(n),
        Family::Connected | Family::Bipartite => {
            all_graphs(n).into_iter().filter(|g| family.contains(g)).collect()
        }
    })
}

/// Concatenation of [`generate_family`] over `n_min..=n_max`.
pub fn generate_range(family: Family, n_min: usize, n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(generate_family(family, n)?);
    }
    Ok(out)
}

fn pair_index(q: usize, p: usize) -> usize {
    p * (p - 1) / 2 + q
}

/// Canonical code of a graph with at most 11 vertices; equal codes iff isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes fit in u64 only up to 11 vertices");
    let rows: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    canonical_code_of_rows(&rows)
}

fn refine(rows: &[u64]) -> Vec<usize> {
    let n = rows.len();
    let mut color: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
    let mut classes = 0;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        color = keys.iter().map(|k| distinct.binary_search(k).unwrap()).collect();
        if distinct.len() == classes {
            return color;
        }
        classes = distinct.len();
    }
}

fn canonical_code_of_rows(rows: &[u64]) -> u64 {
    let n = rows.len();
    if n <= 1 {
        return 0;
    }
    let color = refine(rows);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| color[v]);
    // cell_of_position[p] = color class that must occupy position p
    let cell_of_position: Vec<usize> = order.iter().map(|&v| color[v]).collect();
    let total = n * (n - 1) / 2;
    let mut search = CodeSearch {
        rows,
        color: &color,
        cell_of_position: &cell_of_position,
        total,
        best: u64::MAX,
        placed: Vec::with_capacity(n),
    };
    search.run(0, 0, 0);
    search.best
}

struct CodeSearch<'a> {
    rows: &'a [u64],
    color: &'a [usize],
    cell_of_position: &'a [usize],
    total: usize,
    best: u64,
    placed: Vec<usize>,
}

impl CodeSearch<'_> {
    fn run(&mut self, position: usize, used: u64, prefix: u64) {
        let n = self.rows.len();
        if position == n {
            self.best = self.best.min(prefix);
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 || self.color[v] != self.cell_of_position[position] {
                continue;
            }
            let mut code = prefix;
            for (q, &w) in self.placed.iter().enumerate() {
                if self.rows[v] >> w & 1 == 1 {
                    code |= 1 << (self.total - 1 - pair_index(q, position));
                }
            }
            let fixed = if position == 0 { 0 } else { pair_index(position - 1, position) + 1 };
            let shift = self.total - fixed;
            let best_prefix = if shift >= 64 { 0 } else { self.best >> shift };
            let this_prefix = if shift >= 64 { 0 } else { code >> shift };
            if self.best != u64::MAX && this_prefix > best_prefix {
                continue;
            }
            self.placed.push(v);
            self.run(position + 1, used | 1 << v, code);
            self.placed.pop();
        }
    }
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let total = n * (n - 1) / 2;
    let mut edges = Vec::new();
    for p in 1..n {
        for q in 0..p {
            if code >> (total - 1 - pair_index(q, p)) & 1 == 1 {
                edges.push((q, p));
            }
        }
    }
    Graph::new(n, edges).expect("valid code")
}

fn all_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level: Vec<u64> = vec![0];
    let mut all: Vec<u64> = vec![0];
    let total = n * (n - 1) / 2;
    for _ in 0..total {
        let mut next = HashSet::new();
        for &code in &level {
            let g = graph_from_code(n, code);
            let mut rows: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
            for p in 1..n {
                for q in 0..p {
                    if rows[q] >> p & 1 == 1 {
                        continue;
                    }
                    rows[q] |= 1 << p;
                    rows[p] |= 1 << q;
                    next.insert(canonical_code_of_rows(&rows));
                    rows[q] &= !(1 << p);
                    rows[p] &= !(1 << q);
                }
            }
        }
        let mut next: Vec<u64> = next.into_iter().collect();
        next.sort_unstable();
        all.extend(&next);
        level = next;
    }
    all.into_iter().map(|c| graph_from_code(n, c)).collect()
}

/// AHU encoding of a tree, rooted at its center (minimum over two centers).
pub fn tree_code(t: &Graph) -> String {
    let n = t.n();
    if n <= 1 {
        return "()".repeat(n);
    }
    let mut degree: Vec<usize> = t.degrees().to_vec();
    let mut removed = vec![false; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &leaves {
            removed[v] = true;
            remaining -= 1;
            for w in t.neighbors(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    centers.iter().map(|&c| rooted_code(t, c, usize::MAX)).min().unwrap()
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = t.neighbors(v).filter(|&w| w != parent).map(|w| rooted_code(t, w, v)).collect();
    children.sort();
    format!("({})", children.concat())
}

fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    level.insert(tree_code(&Graph::empty(1)), Graph::empty(1));
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..size - 1 {
                let edges = t.edges().iter().copied().chain([(v, size - 1)]);
                let grown = Graph::new(size, edges).expect("tree");
                next.entry(tree_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

fn forests(n: usize) -> Vec<Graph> {
    // items ordered by size descending; multisets chosen in non-increasing item order
    let mut items: Vec<Graph> = Vec::new();
    for size in (1..=n).rev() {
        items.extend(trees(size));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    pick_forest(&items, 0, n, &mut chosen, &mut out);
    out
}

fn pick_forest(items: &[Graph], start: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<Graph>) {
    if left == 0 {
        let forest = chosen
            .iter()
            .fold(Graph::empty(0), |acc, &i| acc.disjoint_union(&items[i]).expect("forest"));
        out.push(forest);
        return;
    }
    for i in start..items.len() {
        if items[i].n() <= left {
            chosen.push(i);
            pick_forest(items, i, left - items[i].n(), chosen, out);
            chosen.pop();
        }
    }
}
