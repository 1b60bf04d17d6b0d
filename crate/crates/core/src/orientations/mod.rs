//! Switching, canonical orientations, parity-linked orientations and the
//! relation `Sp(R_s) = i Sp(R)`, plus the exhaustive theorem verifier.

mod verify;

use serde::Serialize;

use crate::charpoly::CoefficientPlan;
use crate::graph::{
    components, cycles::cycles_from, structural_predicates, Cycle, CycleOrientationClass, Graph,
    OrientedGraph,
};
use crate::{Error, Result};

pub use verify::{
    verify_cap, verify_theorem, Counterexample, TheoremId, VerificationReport, VerifyError,
    VerifyOptions,
};

/// A vertex subset `W`; switching reverses every arc between `W` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Switch {
    vertices: Vec<usize>,
}

impl Switch {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Switch { vertices }
    }

    pub fn from_mask(mask: u64) -> Self {
        Switch::new((0..64).filter(|v| mask >> v & 1 == 1))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Reverses every arc incident with `v`.
pub fn reverse_at_vertex(og: &OrientedGraph, v: usize) -> Result<OrientedGraph> {
    if v >= og.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: og.n() });
    }
    switch(og, &Switch::new([v]))
}

/// Reverses every arc with exactly one endpoint in `s`.
pub fn switch(og: &OrientedGraph, s: &Switch) -> Result<OrientedGraph> {
    if let Some(&v) = s.vertices.iter().find(|&&v| v >= og.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: og.n() });
    }
    let w = s.mask();
    let reversed = og
        .base()
        .edges()
        .iter()
        .zip(og.reversed())
        .map(|(&(u, v), &r)| r ^ ((w >> u & 1) != (w >> v & 1)))
        .collect();
    Ok(OrientedGraph::with_reversals(og.base().clone(), reversed))
}

/// A switch taking `a` to `b`, if one exists.
///
/// Solves `x_u + x_v = [arc directions differ]` over GF(2) by propagating
/// from the lowest vertex of each component, which is left outside `W`.
pub fn are_switching_equivalent(a: &OrientedGraph, b: &OrientedGraph) -> Result<Option<Switch>> {
    if a.base() != b.base() {
        return Err(Error::DifferentUnderlyingGraphs);
    }
    let g = a.base();
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for comp in components(g) {
        side[comp[0]] = Some(false);
        let mut stack = vec![comp[0]];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for w in g.neighbors(u) {
                let e = g.edge_index(u, w).unwrap();
                let want = su ^ (a.reversed()[e] != b.reversed()[e]);
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        stack.push(w);
                    }
                    Some(s) if s != want => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Some(Switch::new((0..g.n()).filter(|&v| side[v] == Some(true)))))
}

/// Every arc directed from part `X` to part `Y`, where `X` holds the lowest
/// vertex of each component.
pub fn canonical_orientation(g: &Graph) -> Result<OrientedGraph> {
    let parts = structural_predicates(g).bipartite.ok_or(Error::NotBipartite)?;
    let reversed = g.edges().iter().map(|&(u, _)| !parts.in_x(u)).collect();
    Ok(OrientedGraph::with_reversals(g.clone(), reversed))
}

/// Largest order accepted by the cycle-enumerating parity audit.
pub const MAX_PARITY_ORDER: usize = 14;
/// Largest number of even cycles the parity audit will examine.
pub const MAX_PARITY_CYCLES: usize = 1 << 20;

/// Class an even cycle of length `2l` must have in a parity-linked orientation.
pub fn required_class(len: usize) -> CycleOrientationClass {
    if (len / 2) % 2 == 1 {
        CycleOrientationClass::OddlyOriented
    } else {
        CycleOrientationClass::EvenlyOriented
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityAudit {
    pub parity_linked: bool,
    pub even_cycles: usize,
    /// Cycles whose class differs from the required one.
    pub violations: Vec<Cycle>,
    /// `false` flags an audit of a non-bipartite graph, where only even
    /// cycles are examined and the characterization does not apply.
    pub bipartite: bool,
}

/// Precomputed even cycles of one graph, reusable across orientations.
#[derive(Clone, Debug)]
pub struct ParityChecker {
    cycles: Vec<Cycle>,
    /// `(edge index, step runs low to high)` along each cycle's routing
    steps: Vec<Vec<(usize, bool)>>,
    bipartite: bool,
}

impl ParityChecker {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() > MAX_PARITY_ORDER {
            return Err(Error::InstanceTooLarge(format!(
                "parity audit needs n <= {MAX_PARITY_ORDER}, got {}",
                g.n()
            )));
        }
        let mut cycles = Vec::new();
        let mut overflow = false;
        let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        for start in 0..g.n() {
            cycles_from(g, start, all, &mut |path: &[usize]| {
                if path.len() % 2 == 0 {
                    if cycles.len() >= MAX_PARITY_CYCLES {
                        overflow = true;
                    } else {
                        cycles.push(Cycle::new(path.to_vec()));
                    }
                }
            });
            if overflow {
                return Err(Error::InstanceTooLarge(format!(
                    "more than {MAX_PARITY_CYCLES} even cycles"
                )));
            }
        }
        cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let steps = cycles
            .iter()
            .map(|c| c.steps().map(|(a, b)| (g.edge_index(a, b).unwrap(), a < b)).collect())
            .collect();
        Ok(ParityChecker { cycles, steps, bipartite: structural_predicates(g).bipartite.is_some() })
    }

    fn class(&self, i: usize, reversed: &[bool]) -> CycleOrientationClass {
        let forward = self.steps[i].iter().filter(|&&(e, up)| up != reversed[e]).count();
        if forward % 2 == 0 {
            CycleOrientationClass::EvenlyOriented
        } else {
            CycleOrientationClass::OddlyOriented
        }
    }

    fn complies(&self, i: usize, reversed: &[bool]) -> bool {
        self.class(i, reversed) == required_class(self.cycles[i].len())
    }

    /// Whether the orientation given by `reversed` is parity-linked.
    pub fn check(&self, reversed: &[bool]) -> bool {
        (0..self.cycles.len()).all(|i| self.complies(i, reversed))
    }

    pub fn audit(&self, reversed: &[bool]) -> ParityAudit {
        let violations: Vec<Cycle> = (0..self.cycles.len())
            .filter(|&i| !self.complies(i, reversed))
            .map(|i| self.cycles[i].clone())
            .collect();
        ParityAudit {
            parity_linked: violations.is_empty(),
            even_cycles: self.cycles.len(),
            violations,
            bipartite: self.bipartite,
        }
    }
}

/// Audits every even cycle of `og` against the parity-linked rule.
pub fn is_parity_linked(og: &OrientedGraph) -> Result<ParityAudit> {
    Ok(ParityChecker::new(og.base())?.audit(og.reversed()))
}

/// Parity-linked test by switching equivalence with the canonical orientation.
/// Bipartite graphs only.
pub fn is_parity_linked_fast(og: &OrientedGraph) -> Result<bool> {
    let canonical = canonical_orientation(og.base())?;
    Ok(are_switching_equivalent(og, &canonical)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationWitness {
    ExactCoefficientMatch,
    /// First coefficient index at which the relation fails.
    CoefficientMismatch(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralRelationVerdict {
    pub holds: bool,
    pub witness: RelationWitness,
}

/// Exact test of `a_{2i} = (-1)^i c_{2i}` and `a_{2i+1} = c_{2i+1} = 0`.
pub fn spectral_relation_holds(og: &OrientedGraph) -> Result<SpectralRelationVerdict> {
    Ok(spectral_relation_with_plan(&CoefficientPlan::new(og.base())?, og.reversed()))
}

/// As [`spectral_relation_holds`], reusing a plan built for the underlying graph.
pub fn spectral_relation_with_plan(plan: &CoefficientPlan, reversed: &[bool]) -> SpectralRelationVerdict {
    let a = plan.randic_numerators();
    let c = plan.skew_numerators(reversed);
    let mismatch = (0..a.len()).find(|&i| {
        if i % 2 == 1 {
            a[i] != 0 || c[i] != 0
        } else if (i / 2) % 2 == 0 {
            a[i] != c[i]
        } else {
            a[i] != -c[i]
        }
    });
    match mismatch {
        None => SpectralRelationVerdict { holds: true, witness: RelationWitness::ExactCoefficientMatch },
        Some(i) => SpectralRelationVerdict { holds: false, witness: RelationWitness::CoefficientMismatch(i) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{skew_randic_energy, skew_randic_matrix};

    fn evenly_c4() -> OrientedGraph {
        OrientedGraph::directed_cycle(4)
    }

    fn oddly_c4() -> OrientedGraph {
        OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn reverse_at_vertex_flips_incident_arcs() {
        let p2 = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let r = reverse_at_vertex(&p2, 1).unwrap();
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(reverse_at_vertex(&r, 1).unwrap(), p2);
        assert!(reverse_at_vertex(&p2, 2).is_err());
    }

    #[test]
    fn reversal_is_a_diagonal_similarity() {
        let og = OrientedGraph::from_mask(Graph::complete(5), 0b1011001101);
        for v in 0..5 {
            let r = reverse_at_vertex(&og, v).unwrap();
            let mut flip = nalgebra::DMatrix::<f64>::identity(5, 5);
            flip[(v, v)] = -1.0;
            let conj = &flip * skew_randic_matrix(&og).entries() * &flip;
            assert_eq!(&conj, skew_randic_matrix(&r).entries());
        }
    }

    #[test]
    fn cyclic_triangle_energy_survives_reversal() {
        let og = OrientedGraph::directed_cycle(3);
        for v in 0..3 {
            let e = skew_randic_energy(&reverse_at_vertex(&og, v).unwrap()).unwrap();
            assert!((e - 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_switches_are_identities() {
        let og = OrientedGraph::from_mask(Graph::complete(4), 0b101001);
        assert_eq!(switch(&og, &Switch::new([])).unwrap(), og);
        assert_eq!(switch(&og, &Switch::new(0..4)).unwrap(), og);
        assert_eq!(switch(&og, &Switch::new([2])).unwrap(), reverse_at_vertex(&og, 2).unwrap());
    }

    #[test]
    fn equivalence_witnesses() {
        let og = OrientedGraph::from_mask(Graph::complete(4), 0b011010);
        assert_eq!(are_switching_equivalent(&og, &og).unwrap(), Some(Switch::new([])));
        let r = reverse_at_vertex(&og, 3).unwrap();
        assert_eq!(are_switching_equivalent(&og, &r).unwrap(), Some(Switch::new([3])));
        // vertex 0 is pinned outside W, so the complement comes back
        let r = reverse_at_vertex(&og, 0).unwrap();
        assert_eq!(are_switching_equivalent(&og, &r).unwrap(), Some(Switch::new([1, 2, 3])));
        assert_eq!(
            are_switching_equivalent(&og, &OrientedGraph::directed_cycle(4)),
            Err(Error::DifferentUnderlyingGraphs)
        );
    }

    #[test]
    fn evenly_and_oddly_oriented_c4_are_not_equivalent() {
        let (a, b) = (evenly_c4(), oddly_c4());
        assert_eq!(are_switching_equivalent(&a, &b).unwrap(), None);
        for w in 0..16 {
            assert_ne!(switch(&a, &Switch::from_mask(w)).unwrap(), b);
        }
    }

    #[test]
    fn canonical_orientations() {
        let p2 = canonical_orientation(&Graph::path(2)).unwrap();
        assert_eq!(p2.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        let c4 = canonical_orientation(&Graph::cycle(4)).unwrap();
        let mut arcs: Vec<_> = c4.arcs().collect();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(0, 1), (0, 3), (2, 1), (2, 3)]);
        assert_eq!(canonical_orientation(&Graph::complete(3)), Err(Error::NotBipartite));
    }

    #[test]
    fn parity_linked_examples() {
        assert!(is_parity_linked(&evenly_c4()).unwrap().parity_linked);
        let audit = is_parity_linked(&oddly_c4()).unwrap();
        assert!(!audit.parity_linked);
        assert_eq!(audit.violations, vec![Cycle::new(vec![0, 1, 2, 3])]);
        assert!(is_parity_linked_fast(&evenly_c4()).unwrap());
        assert!(!is_parity_linked_fast(&oddly_c4()).unwrap());
        let tree = OrientedGraph::from_mask(Graph::star(5), 0b0110);
        assert!(is_parity_linked(&tree).unwrap().parity_linked);
        assert!(is_parity_linked(&OrientedGraph::low_to_high(Graph::complete(15))).is_err());
    }

    #[test]
    fn non_bipartite_audits_are_flagged() {
        let audit = is_parity_linked(&OrientedGraph::low_to_high(Graph::complete(4))).unwrap();
        assert!(!audit.bipartite);
        assert_eq!(audit.even_cycles, 3);
        assert_eq!(is_parity_linked_fast(&OrientedGraph::directed_cycle(3)), Err(Error::NotBipartite));
    }

    #[test]
    fn spectral_relation_examples() {
        let v = spectral_relation_holds(&evenly_c4()).unwrap();
        assert_eq!(v.witness, RelationWitness::ExactCoefficientMatch);
        let v = spectral_relation_holds(&oddly_c4()).unwrap();
        assert_eq!(v, SpectralRelationVerdict { holds: false, witness: RelationWitness::CoefficientMismatch(4) });
        let t = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        assert!(spectral_relation_holds(&canonical_orientation(&t).unwrap()).unwrap().holds);
        for mask in 0..8 {
            let k3 = OrientedGraph::from_mask(Graph::complete(3), mask);
            assert!(!spectral_relation_holds(&k3).unwrap().holds);
        }
    }
}
