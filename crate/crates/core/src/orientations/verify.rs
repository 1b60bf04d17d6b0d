//! Exhaustive verification of the characterizations over small graph families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    are_switching_equivalent, canonical_orientation, spectral_relation_with_plan, switch,
    ParityChecker, Switch,
};
use crate::bounds::{
    chemical_tree_lower, chemical_tree_upper, energy_bounds_with, is_matching_union,
    order_only_energy_bounds_with, randic_index_bounds_general, tree_randic_index_bounds,
};
use crate::charpoly::{charpoly_numeric_oracle, max_coefficient_gap, CoefficientPlan};
use crate::families::{generate_family, Family};
use crate::graph::{structural_predicates, write_graph, write_oriented, Graph, OrientedGraph};
use crate::spectra::{
    randic_energy, randic_index, randic_matrix, randic_spectrum, rational_to_f64,
    skew_randic_matrix, skew_randic_spectrum, spectrum,
};
use crate::sweep::{fold_range, map_items, Exec, OrientationSpace};
use crate::{Error, Rational, Result, DEFAULT_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Exact coefficients agree with the eigenvalue-based polynomial.
    CharpolyOracle,
    /// `sum mu_j^2 = 2 R_{-1}`.
    TraceIdentity,
    /// Energy lies between the `R_{-1}`/determinant bounds.
    EnergyBounds,
    /// Order-only energy bounds hold, tight exactly on their stated extremal graphs.
    OrderOnlyBounds,
    /// `n/(2(n-1)) <= R_{-1} <= floor(n/2)` with its equality cases.
    RandicIndexBounds,
    /// `1 <= R_{-1}(T) <= (5n+8)/18` on trees.
    TreeRandicBounds,
    /// Chemical-tree minimum table and upper bound.
    ChemicalTreeBounds,
    /// Exactly two distinct Randić eigenvalues iff complete.
    TwoEigenvalues,
    /// Switching preserves the skew Randić polynomial and spectrum.
    SwitchingSpectrum,
    /// Every orientation of a tree has the same polynomial and energy equal to the Randić energy.
    TreeIndependence,
    /// Some orientation satisfies the spectral relation iff bipartite.
    BipartiteIffExists,
    /// Every orientation satisfies the relation iff the connected graph is a tree.
    TreeIffAll,
    /// Every orientation satisfies the relation iff forest.
    ForestIffAll,
    /// Relation holds iff parity-linked iff switching-equivalent to canonical.
    ParityLinked,
    /// Relation holds iff switching-equivalent to the canonical orientation.
    CanonicalSwitching,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::CharpolyOracle,
        TheoremId::TraceIdentity,
        TheoremId::EnergyBounds,
        TheoremId::OrderOnlyBounds,
        TheoremId::RandicIndexBounds,
        TheoremId::TreeRandicBounds,
        TheoremId::ChemicalTreeBounds,
        TheoremId::TwoEigenvalues,
        TheoremId::SwitchingSpectrum,
        TheoremId::TreeIndependence,
        TheoremId::BipartiteIffExists,
        TheoremId::TreeIffAll,
        TheoremId::ForestIffAll,
        TheoremId::ParityLinked,
        TheoremId::CanonicalSwitching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::CharpolyOracle => "charpoly-oracle",
            TheoremId::TraceIdentity => "trace-identity",
            TheoremId::EnergyBounds => "energy-bounds",
            TheoremId::OrderOnlyBounds => "order-only-bounds",
            TheoremId::RandicIndexBounds => "randic-index-bounds",
            TheoremId::TreeRandicBounds => "tree-randic-bounds",
            TheoremId::ChemicalTreeBounds => "chemical-tree-bounds",
            TheoremId::TwoEigenvalues => "two-eigenvalues",
            TheoremId::SwitchingSpectrum => "switching-spectrum",
            TheoremId::TreeIndependence => "tree-independence",
            TheoremId::BipartiteIffExists => "bipartite-iff-exists",
            TheoremId::TreeIffAll => "tree-iff-all",
            TheoremId::ForestIffAll => "forest-iff-all",
            TheoremId::ParityLinked => "parity-linked",
            TheoremId::CanonicalSwitching => "canonical-switching",
        }
    }

    /// Family used when none is given.
    pub fn default_family(self) -> Family {
        match self {
            TheoremId::RandicIndexBounds | TheoremId::ForestIffAll => Family::Graphs,
            TheoremId::TreeRandicBounds | TheoremId::TreeIndependence => Family::Trees,
            TheoremId::ChemicalTreeBounds => Family::ChemicalTrees,
            TheoremId::ParityLinked | TheoremId::CanonicalSwitching => Family::Bipartite,
            _ => Family::Connected,
        }
    }

    /// Whether the checked property is invariant under switching, so that
    /// one orientation per switching class suffices.
    pub fn switch_reducible(self) -> bool {
        matches!(
            self,
            TheoremId::CharpolyOracle
                | TheoremId::TraceIdentity
                | TheoremId::EnergyBounds
                | TheoremId::OrderOnlyBounds
                | TheoremId::SwitchingSpectrum
                | TheoremId::BipartiteIffExists
                | TheoremId::TreeIffAll
                | TheoremId::ForestIffAll
        )
    }

    /// Whether the sweep visits orientations at all.
    pub fn uses_orientations(self) -> bool {
        !matches!(
            self,
            TheoremId::RandicIndexBounds
                | TheoremId::TreeRandicBounds
                | TheoremId::ChemicalTreeBounds
                | TheoremId::TwoEigenvalues
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown theorem '{s}'")))
    }
}

/// Largest `n` the verifier accepts for each family.
pub fn verify_cap(family: Family) -> usize {
    match family {
        Family::Trees | Family::Forests => 9,
        Family::Connected | Family::Graphs => 7,
        Family::Bipartite => 6,
        Family::ChemicalTrees => 12,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub exec: Exec,
    /// Sweep one orientation per switching class where the property allows it.
    pub switch_reduction: bool,
    pub tolerance: f64,
    /// Budget on visited orientations across the whole run.
    pub max_orientations: u64,
    /// Number of counterexamples kept in the report (all are counted).
    pub max_counterexamples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exec: Exec::default(),
            switch_reduction: true,
            tolerance: DEFAULT_TOLERANCE,
            max_orientations: 1 << 24,
            max_counterexamples: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub n: usize,
    /// Graph in the edge-list text format.
    pub graph: String,
    /// Orientation in the arc-list text format, when the failure is per orientation.
    pub orientation: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    /// Graphs examined.
    pub instances: u64,
    /// Orientations examined.
    pub orientations: u64,
    /// Individual assertions evaluated.
    pub checks: u64,
    /// Whether one orientation per switching class was used.
    pub switch_reduction: bool,
    pub counterexample_count: u64,
    /// The first counterexamples in sorted order.
    pub counterexamples: Vec<Counterexample>,
    /// Largest numeric deviation observed in a tolerance comparison.
    pub max_deviation: f64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyError {
    Invalid(Error),
    /// A resource cap was reached; the report covers the orders finished so far.
    CapExceeded { cap: String, partial: Box<VerificationReport> },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Invalid(e) => e.fmt(f),
            VerifyError::CapExceeded { cap, partial } => {
                write!(f, "cap exceeded: {cap} (completed n <= {})", partial.n_max)
            }
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<Error> for VerifyError {
    fn from(e: Error) -> Self {
        VerifyError::Invalid(e)
    }
}

/// Mergeable partial result. `merge` is associative and commutative.
#[derive(Clone, Debug, Default)]
struct Tally {
    instances: u64,
    orientations: u64,
    checks: u64,
    failures: u64,
    counterexamples: Vec<Counterexample>,
    max_deviation: f64,
    notes: BTreeSet<String>,
    keep: usize,
}

impl Tally {
    fn new(keep: usize) -> Self {
        Tally { keep, ..Tally::default() }
    }

    fn trim(&mut self) {
        self.counterexamples.sort();
        self.counterexamples.dedup();
        self.counterexamples.truncate(self.keep);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.orientations += other.orientations;
        self.checks += other.checks;
        self.failures += other.failures;
        self.counterexamples.extend(other.counterexamples);
        self.max_deviation = self.max_deviation.max(other.max_deviation);
        self.notes.extend(other.notes);
        self.keep = self.keep.max(other.keep);
        self.trim();
        self
    }

    fn check(&mut self, ok: bool, g: &Graph, og: Option<&OrientedGraph>, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if ok {
            return;
        }
        self.failures += 1;
        self.counterexamples.push(Counterexample {
            n: g.n(),
            graph: write_graph(g),
            orientation: og.map(write_oriented),
            detail: detail(),
        });
        if self.counterexamples.len() > 2 * self.keep {
            self.trim();
        }
    }

    fn within(&mut self, gap: f64, tol: f64, g: &Graph, og: Option<&OrientedGraph>, what: &str) {
        self.max_deviation = self.max_deviation.max(gap);
        self.check(gap <= tol, g, og, || format!("{what}: deviation {gap:.3e} exceeds {tol:.1e}"));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.insert(s.into());
    }
}

struct Run<'a> {
    theorem: TheoremId,
    opts: &'a VerifyOptions,
    reduce: bool,
}

impl Run<'_> {
    fn space(&self, g: &Graph) -> Result<OrientationSpace> {
        OrientationSpace::new(g, self.reduce)
    }

    /// Folds `f` over every orientation in the sweep space of `g`.
    fn sweep<F>(&self, g: &Graph, f: F) -> Result<Tally>
    where
        F: Fn(&OrientedGraph, &mut Tally) + Sync + Send,
    {
        let space = self.space(g)?;
        let keep = self.opts.max_counterexamples;
        Ok(fold_range(
            self.opts.exec,
            0..space.len(),
            || Tally::new(keep),
            |mut t, i| {
                let og = OrientedGraph::with_reversals(g.clone(), space.reversed(i));
                t.orientations += 1;
                f(&og, &mut t);
                t
            },
            Tally::merge,
        ))
    }

    /// Number of swept orientations satisfying the spectral relation.
    fn relation_count(&self, g: &Graph, plan: &CoefficientPlan) -> Result<(u64, u64)> {
        let space = self.space(g)?;
        Ok(fold_range(
            self.opts.exec,
            0..space.len(),
            || (0u64, 0u64),
            |(n, h), i| (n + 1, h + u64::from(spectral_relation_with_plan(plan, &space.reversed(i)).holds)),
            |a, b| (a.0 + b.0, a.1 + b.1),
        ))
    }

    fn graph(&self, g: &Graph) -> Result<Tally> {
        let tol = self.opts.tolerance;
        let mut t = Tally::new(self.opts.max_counterexamples);
        t.instances = 1;
        let pred = structural_predicates(g);
        let n = g.n();
        let skip = |t: &mut Tally, why: &str| {
            t.note(format!("graphs {why} skipped"));
        };
        match self.theorem {
            TheoremId::CharpolyOracle => {
                let plan = CoefficientPlan::new(g)?;
                let oracle = charpoly_numeric_oracle(&randic_matrix(g))?;
                t.within(max_coefficient_gap(&plan.randic(), &oracle), tol, g, None, "Randić coefficients");
                let swept = self.sweep(g, |og, t| match charpoly_numeric_oracle(&skew_randic_matrix(og)) {
                    Ok(oracle) => {
                        let gap = max_coefficient_gap(&plan.skew(og.reversed()), &oracle);
                        t.within(gap, tol, g, Some(og), "skew Randić coefficients");
                    }
                    Err(e) => t.check(false, g, Some(og), || e.to_string()),
                })?;
                t = t.merge(swept);
            }
            TheoremId::TraceIdentity => {
                let target = 2.0 * rational_to_f64(&randic_index(g));
                let sq: f64 = randic_spectrum(g)?.values.iter().map(|x| x * x).sum();
                t.within((sq - target).abs(), tol, g, None, "Randić trace");
                let swept = self.sweep(g, |og, t| match skew_randic_spectrum(og) {
                    Ok(s) => {
                        let sq: f64 = s.values.iter().map(|x| x * x).sum();
                        t.within((sq - target).abs(), tol, g, Some(og), "skew trace");
                    }
                    Err(e) => t.check(false, g, Some(og), || e.to_string()),
                })?;
                t = t.merge(swept);
            }
            TheoremId::EnergyBounds => {
                if n < 2 || pred.has_isolated_vertex {
                    skip(&mut t, "with isolated vertices");
                    return Ok(t);
                }
                let swept = self.sweep(g, |og, t| match energy_bounds_with(og, tol) {
                    Ok(r) => {
                        let gap = (r.lower - r.value).max(r.value - r.upper).max(0.0);
                        t.max_deviation = t.max_deviation.max(gap);
                        t.check(r.holds(tol), g, Some(og), || {
                            format!("{:.9} <= {:.9} <= {:.9} violated", r.lower, r.value, r.upper)
                        });
                    }
                    Err(e) => t.check(false, g, Some(og), || e.to_string()),
                })?;
                t = t.merge(swept);
            }
            TheoremId::OrderOnlyBounds => {
                if n < 2 || pred.has_isolated_vertex {
                    skip(&mut t, "with isolated vertices");
                    return Ok(t);
                }
                let swept = self.sweep(g, |og, t| match order_only_energy_bounds_with(og, tol) {
                    Ok(r) => {
                        t.check(r.holds(tol), g, Some(og), || {
                            format!("{:.9} <= {:.9} <= {:.9} violated", r.lower, r.value, r.upper)
                        });
                        let sides = [
                            ("lower", r.lower_tight, r.lower_characterization),
                            ("upper", r.upper_tight, r.upper_characterization),
                        ];
                        for (side, tight, stated) in sides {
                            t.check(Some(tight) == stated, g, Some(og), || equality_mismatch(side, tight));
                        }
                    }
                    Err(e) => t.check(false, g, Some(og), || e.to_string()),
                })?;
                t = t.merge(swept);
            }
            TheoremId::RandicIndexBounds => {
                if n < 2 || pred.has_isolated_vertex {
                    skip(&mut t, "with isolated vertices");
                    return Ok(t);
                }
                let r = randic_index(g);
                let (lo, hi) = randic_index_bounds_general(n)?;
                t.check(lo <= r && r <= hi, g, None, || format!("{lo} <= {r} <= {hi} violated"));
                t.check((r == lo) == pred.complete, g, None, || {
                    format!("lower equality {} but complete {}", r == lo, pred.complete)
                });
                let union = is_matching_union(g);
                t.check((r == hi) == union, g, None, || {
                    format!("upper equality {} but matching union {union}", r == hi)
                });
            }
            TheoremId::TreeRandicBounds => {
                if n < 2 {
                    skip(&mut t, "of order 1");
                    return Ok(t);
                }
                if !pred.tree {
                    skip(&mut t, "outside the tree hypothesis");
                    return Ok(t);
                }
                let r = randic_index(g);
                let b = tree_randic_index_bounds(n)?;
                t.check(b.lower <= r && r <= b.upper, g, None, || {
                    format!("{} <= {r} <= {} violated", b.lower, b.upper)
                });
            }
            TheoremId::ChemicalTreeBounds => {
                if n < 2 {
                    skip(&mut t, "of order 1");
                    return Ok(t);
                }
                if !(pred.tree && pred.chemical) {
                    skip(&mut t, "outside the chemical-tree hypothesis");
                    return Ok(t);
                }
                let r = randic_index(g);
                let lo = chemical_tree_lower(n)?;
                t.check(lo <= r, g, None, || format!("R_-1 = {r} below minimum {lo}"));
                if n > 6 {
                    let up = chemical_tree_upper(n)?.value;
                    t.check(r <= up, g, None, || format!("R_-1 = {r} above upper bound {up}"));
                }
            }
            TheoremId::TwoEigenvalues => {
                if n < 2 {
                    skip(&mut t, "of order 1");
                    return Ok(t);
                }
                if !pred.connected {
                    skip(&mut t, "outside the connected hypothesis");
                    return Ok(t);
                }
                let s = randic_spectrum(g)?;
                let norm = randic_matrix(g).frobenius_norm();
                let distinct = s.distinct_values(tol * (1.0 + norm)).len();
                t.check((distinct == 2) == pred.complete, g, None, || {
                    format!("{distinct} distinct eigenvalues, complete {}", pred.complete)
                });
            }
            TheoremId::SwitchingSpectrum => {
                let plan = CoefficientPlan::new(g)?;
                let switches = switch_set(n);
                let swept = self.sweep(g, |og, t| {
                    let coeffs = plan.skew_numerators(og.reversed());
                    let base = skew_randic_spectrum(og);
                    for (k, w) in switches.iter().enumerate() {
                        let Ok(s) = switch(og, w) else { continue };
                        t.check(plan.skew_numerators(s.reversed()) == coeffs, g, Some(og), || {
                            format!("coefficients change under switching {:?}", w.vertices())
                        });
                        // spectra are compared on the single-vertex switches
                        if k < n {
                            if let (Ok(a), Ok(b)) = (&base, skew_randic_spectrum(&s)) {
                                t.within(a.max_deviation(&b), tol, g, Some(og), "switched spectrum");
                            }
                        }
                    }
                })?;
                t = t.merge(swept);
            }
            TheoremId::TreeIndependence => {
                if !pred.tree {
                    skip(&mut t, "outside the tree hypothesis");
                    return Ok(t);
                }
                let plan = CoefficientPlan::new(g)?;
                let reference = plan.skew_numerators(&vec![false; g.m()]);
                let energy = randic_energy(g)?;
                let swept = self.sweep(g, |og, t| {
                    t.check(plan.skew_numerators(og.reversed()) == reference, g, Some(og), || {
                        "polynomial depends on the orientation".into()
                    });
                    match spectrum(&skew_randic_matrix(og)) {
                        Ok(s) => t.within((s.energy() - energy).abs(), tol, g, Some(og), "energy vs Randić energy"),
                        Err(e) => t.check(false, g, Some(og), || e.to_string()),
                    }
                })?;
                t = t.merge(swept);
            }
            TheoremId::BipartiteIffExists => {
                let plan = CoefficientPlan::new(g)?;
                let (count, holds) = self.relation_count(g, &plan)?;
                t.orientations += count;
                let bipartite = pred.bipartite.is_some();
                t.check((holds > 0) == bipartite, g, None, || {
                    format!("{holds} of {count} orientations satisfy the relation, bipartite {bipartite}")
                });
                if bipartite {
                    let c = canonical_orientation(g)?;
                    t.check(spectral_relation_with_plan(&plan, c.reversed()).holds, g, Some(&c), || {
                        "canonical orientation fails the relation".into()
                    });
                }
            }
            TheoremId::TreeIffAll | TheoremId::ForestIffAll => {
                let (expected, label) = if self.theorem == TheoremId::TreeIffAll {
                    if !pred.connected {
                        skip(&mut t, "outside the connected hypothesis");
                        return Ok(t);
                    }
                    (pred.tree, "tree")
                } else {
                    (pred.forest, "forest")
                };
                let plan = CoefficientPlan::new(g)?;
                let (count, holds) = self.relation_count(g, &plan)?;
                t.orientations += count;
                t.check((holds == count) == expected, g, None, || {
                    format!("{holds} of {count} orientations satisfy the relation, {label} {expected}")
                });
            }
            TheoremId::ParityLinked | TheoremId::CanonicalSwitching => {
                if pred.bipartite.is_none() {
                    skip(&mut t, "outside the bipartite hypothesis");
                    return Ok(t);
                }
                let plan = CoefficientPlan::new(g)?;
                let canonical = canonical_orientation(g)?;
                let parity = match self.theorem {
                    TheoremId::ParityLinked => Some(ParityChecker::new(g)?),
                    _ => None,
                };
                let swept = self.sweep(g, |og, t| {
                    let rel = spectral_relation_with_plan(&plan, og.reversed()).holds;
                    let equiv = matches!(are_switching_equivalent(og, &canonical), Ok(Some(_)));
                    t.check(rel == equiv, g, Some(og), || {
                        format!("relation {rel}, switching-equivalent to canonical {equiv}")
                    });
                    if let Some(p) = &parity {
                        let linked = p.check(og.reversed());
                        t.check(rel == linked, g, Some(og), || format!("relation {rel}, parity-linked {linked}"));
                    }
                })?;
                t = t.merge(swept);
            }
        }
        Ok(t)
    }
}

fn equality_mismatch(side: &str, tight: bool) -> String {
    if tight {
        format!("{side} bound attained but the stated equality condition fails")
    } else {
        format!("stated equality condition holds but the {side} bound is not attained")
    }
}

/// Every switch up to complement, single vertices first. Applied to one
/// representative per class, these reach every orientation of the class.
fn switch_set(n: usize) -> Vec<Switch> {
    let mut out: Vec<Switch> = (0..n).map(|v| Switch::new([v])).collect();
    if n > 1 {
        let rest = (1u64 << (n - 1)) - 1;
        out.extend((1..=rest).filter(|w| w.count_ones() > 1).map(Switch::from_mask));
    }
    out
}

fn orientation_budget(theorem: TheoremId, graphs: &[Graph], reduce: bool) -> Result<u64> {
    if !theorem.uses_orientations() {
        return Ok(0);
    }
    graphs.iter().try_fold(0u64, |acc, g| Ok(acc.saturating_add(OrientationSpace::new(g, reduce)?.len())))
}

/// Checks `theorem` over every graph of `family` with `n_min <= n <= n_max`,
/// and over their orientations where the theorem concerns orientations.
pub fn verify_theorem(
    theorem: TheoremId,
    family: Family,
    n_min: usize,
    n_max: usize,
    opts: &VerifyOptions,
) -> std::result::Result<VerificationReport, VerifyError> {
    if n_max > verify_cap(family) {
        return Err(Error::InstanceTooLarge(format!(
            "verify cap for {family} is n <= {}, got {n_max}",
            verify_cap(family)
        ))
        .into());
    }
    if !(opts.tolerance > 0.0) {
        return Err(Error::Unsupported("tolerance must be positive".into()).into());
    }
    let reduce = opts.switch_reduction && theorem.switch_reducible();
    let run = Run { theorem, opts, reduce };
    let mut total = Tally::new(opts.max_counterexamples);
    let mut visited = 0u64;
    let mut finished = n_min.saturating_sub(1);
    let mut cap_hit = None;
    if theorem == TheoremId::ParityLinked && family != Family::Bipartite {
        total.note("parity audits on non-bipartite graphs cover even cycles only and are not compared");
    }

    for n in n_min..=n_max {
        let graphs = generate_family(family, n)?;
        let need = orientation_budget(theorem, &graphs, reduce)?;
        if visited.saturating_add(need) > opts.max_orientations {
            cap_hit = Some(format!(
                "orientation budget {} reached at n = {n} ({need} more needed)",
                opts.max_orientations
            ));
            break;
        }
        visited += need;
        let partials = map_items(opts.exec, &graphs, |g| run.graph(g));
        for p in partials {
            total = total.merge(p?);
        }
        if theorem == TheoremId::ChemicalTreeBounds && !graphs.is_empty() && n >= 2 {
            check_chemical_extremes(&mut total, &graphs, n)?;
        }
        finished = n;
    }

    total.trim();
    let report = VerificationReport {
        theorem,
        family,
        n_min,
        n_max: finished,
        instances: total.instances,
        orientations: total.orientations,
        checks: total.checks,
        switch_reduction: reduce,
        counterexample_count: total.failures,
        counterexamples: total.counterexamples,
        max_deviation: total.max_deviation,
        notes: total.notes.into_iter().collect(),
    };
    match cap_hit {
        None => Ok(report),
        Some(cap) => Err(VerifyError::CapExceeded { cap, partial: Box::new(report) }),
    }
}

/// The tabulated minimum must be attained; the upper bound's gap is reported.
fn check_chemical_extremes(t: &mut Tally, graphs: &[Graph], n: usize) -> Result<()> {
    let values: Vec<Rational> = graphs.iter().map(randic_index).collect();
    let min = values.iter().min().unwrap();
    let lower = chemical_tree_lower(n)?;
    let argmin = &graphs[values.iter().position(|v| v == min).unwrap()];
    t.check(*min == lower, argmin, None, || format!("family minimum {min} differs from tabulated minimum {lower}"));
    if n > 6 {
        let max = values.iter().max().unwrap();
        let upper = chemical_tree_upper(n)?.value;
        t.note(format!(
            "n = {n:2}: max R_-1 = {:.6}, upper bound {:.6}",
            rational_to_f64(max),
            rational_to_f64(&upper)
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(theorem: TheoremId, family: Family, n_max: usize) -> VerificationReport {
        verify_theorem(theorem, family, 1, n_max, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
        assert!("nonsense".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for t in TheoremId::ALL {
            if t == TheoremId::OrderOnlyBounds {
                continue;
            }
            let family = t.default_family();
            let r = quick(t, family, 4.min(verify_cap(family)));
            assert!(r.passed(), "{t}: {:?}", r.counterexamples);
            assert!(r.instances > 0);
        }
    }

    #[test]
    fn k4_meets_the_order_only_lower_bound_without_scaled_orthogonality() {
        // With two modulus pairs the AM-GM step is an identity, so every
        // orientation of K_4 is tight; only 16 of the 64 satisfy
        // R_s^T R_s = I/3.
        let opts = VerifyOptions { switch_reduction: false, ..VerifyOptions::default() };
        let r = verify_theorem(TheoremId::OrderOnlyBounds, Family::Connected, 1, 5, &opts).unwrap();
        assert_eq!(r.counterexample_count, 48);
        let k4 = write_graph(&Graph::complete(4));
        for c in &r.counterexamples {
            assert_eq!(c.graph, k4);
            assert_eq!(c.detail, "lower bound attained but the stated equality condition fails");
        }
    }

    #[test]
    fn caps_are_enforced() {
        let err = verify_theorem(TheoremId::ParityLinked, Family::Bipartite, 1, 7, &VerifyOptions::default());
        assert!(matches!(err, Err(VerifyError::Invalid(Error::InstanceTooLarge(_)))));
        let opts = VerifyOptions { max_orientations: 100, ..VerifyOptions::default() };
        match verify_theorem(TheoremId::ParityLinked, Family::Bipartite, 1, 6, &opts) {
            Err(VerifyError::CapExceeded { partial, .. }) => {
                assert!(partial.n_max < 6);
                assert!(partial.orientations <= 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let mut opts = VerifyOptions { exec: Exec::Sequential, ..VerifyOptions::default() };
        let a = verify_theorem(TheoremId::ParityLinked, Family::Bipartite, 1, 5, &opts).unwrap();
        opts.exec = Exec::Parallel;
        let b = verify_theorem(TheoremId::ParityLinked, Family::Bipartite, 1, 5, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reduction_shrinks_the_sweep() {
        let with = quick(TheoremId::TraceIdentity, Family::Connected, 5);
        let opts = VerifyOptions { switch_reduction: false, ..VerifyOptions::default() };
        let without = verify_theorem(TheoremId::TraceIdentity, Family::Connected, 1, 5, &opts).unwrap();
        assert!(with.switch_reduction && !without.switch_reduction);
        assert!(with.orientations < without.orientations);
        assert_eq!(with.instances, without.instances);
    }
}
