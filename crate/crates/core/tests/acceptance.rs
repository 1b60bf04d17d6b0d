//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines appear in `cargo test` output.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use skew_randic::bounds::{
    chemical_tree_lower, chemical_tree_upper, energy_bounds, order_only_energy_bounds,
    randic_index_bounds_general, tree_randic_index_bounds,
};
use skew_randic::charpoly::{
    charpoly_numeric_oracle, max_coefficient_gap, randic_coeffs, skew_randic_coeffs, CoefficientPlan,
};
use skew_randic::families::{generate_family, generate_range, Family};
use skew_randic::graph::{components, structural_predicates};
use skew_randic::orientations::{is_parity_linked, is_parity_linked_fast, spectral_relation_holds};
use skew_randic::spectra::{
    randic_energy, randic_index, randic_matrix, randic_spectrum, rational_to_f64,
    skew_randic_matrix, skew_randic_spectrum,
};
use skew_randic::sweep::OrientationSpace;
use skew_randic::{Graph, OrientedGraph, Rational};

/// Absolute tolerance for every floating-point comparison below.
const TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn all_orientations(g: &Graph) -> impl Iterator<Item = OrientedGraph> + '_ {
    let space = OrientationSpace::new(g, false).expect("orientation space");
    (0..space.len()).map(move |i| OrientedGraph::with_reversals(g.clone(), space.reversed(i)))
}

fn class_representatives(g: &Graph) -> impl Iterator<Item = OrientedGraph> + '_ {
    let space = OrientationSpace::new(g, true).expect("orientation space");
    (0..space.len()).map(move |i| OrientedGraph::with_reversals(g.clone(), space.reversed(i)))
}

fn connected(n_max: usize) -> Vec<Graph> {
    generate_range(Family::Connected, 1, n_max).unwrap()
}

fn fail_if(bad: Vec<String>, ok: String) -> Outcome {
    match bad.first() {
        None => Ok(ok),
        Some(first) => Err(format!("{} failures, first: {first}", bad.len())),
    }
}

fn coefficient_oracle() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    let mut orientations = 0u64;
    let graphs7 = connected(7);
    for g in &graphs7 {
        let gap = max_coefficient_gap(&randic_coeffs(g).unwrap(), &charpoly_numeric_oracle(&randic_matrix(g)).unwrap());
        worst = worst.max(gap);
        if gap > TOL {
            bad.push(format!("Randić {:?}: gap {gap:e}", g.edges()));
        }
    }
    for g in graphs7.iter().filter(|g| g.n() <= 6) {
        let plan = CoefficientPlan::new(g).unwrap();
        for og in all_orientations(g) {
            orientations += 1;
            let oracle = charpoly_numeric_oracle(&skew_randic_matrix(&og)).unwrap();
            let gap = max_coefficient_gap(&plan.skew(og.reversed()), &oracle);
            worst = worst.max(gap);
            if gap > TOL {
                bad.push(format!("skew {:?}: gap {gap:e}", og.arcs().collect::<Vec<_>>()));
            }
        }
    }
    fail_if(bad, format!("{} graphs, {orientations} orientations, max gap {worst:.1e}", graphs7.len()))
}

fn trace_identity() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    let mut orientations = 0u64;
    let graphs = connected(7);
    for g in &graphs {
        let target = 2.0 * rational_to_f64(&randic_index(g));
        let sq: f64 = randic_spectrum(g).unwrap().values.iter().map(|x| x * x).sum();
        worst = worst.max((sq - target).abs());
        if (sq - target).abs() > TOL {
            bad.push(format!("Randić {:?}", g.edges()));
        }
        if g.n() > 6 {
            continue;
        }
        for og in all_orientations(g) {
            orientations += 1;
            let sq: f64 = skew_randic_spectrum(&og).unwrap().values.iter().map(|x| x * x).sum();
            worst = worst.max((sq - target).abs());
            if (sq - target).abs() > TOL {
                bad.push(format!("skew {:?}", og.arcs().collect::<Vec<_>>()));
            }
        }
    }
    fail_if(bad, format!("{} graphs, {orientations} orientations, max deviation {worst:.1e}", graphs.len()))
}

fn energy_bounds_hold() -> Outcome {
    let mut bad = Vec::new();
    let mut orientations = 0u64;
    let graphs: Vec<Graph> = connected(7).into_iter().filter(|g| g.n() >= 2).collect();
    for g in &graphs {
        // energy, p and R_-1 are switching invariants
        for og in class_representatives(g) {
            orientations += 1;
            let r = energy_bounds(&og).unwrap();
            if !(r.lower - TOL <= r.value && r.value <= r.upper + TOL) {
                bad.push(format!("{:?}: {} <= {} <= {}", og.arcs().collect::<Vec<_>>(), r.lower, r.value, r.upper));
            }
        }
    }
    fail_if(bad, format!("{} graphs, {orientations} switching classes", graphs.len()))
}

fn tightness_witnesses() -> Outcome {
    let mut bad = Vec::new();
    let p2 = energy_bounds(&OrientedGraph::from_arcs(2, [(0, 1)]).unwrap()).unwrap();
    if (p2.value - 2.0).abs() > TOL || !p2.lower_tight || !p2.upper_tight {
        bad.push(format!("P_2: {p2:?}"));
    }
    for og in all_orientations(&Graph::complete(3)) {
        let r = order_only_energy_bounds(&og).unwrap();
        if (r.lower - 3f64.sqrt()).abs() > TOL || (r.value - 3f64.sqrt()).abs() > TOL {
            bad.push(format!("K_3 {:?}: {} vs {}", og.arcs().collect::<Vec<_>>(), r.value, r.lower));
        }
    }
    let c4 = OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let r = energy_bounds(&c4).unwrap();
    if (r.upper - 2.0 * 2f64.sqrt()).abs() > TOL || (r.value - r.upper).abs() > TOL {
        bad.push(format!("oddly oriented C_4: {} vs {}", r.value, r.upper));
    }
    let mut stars = 0;
    for n in [3, 5, 7, 9] {
        for og in all_orientations(&Graph::star(n)) {
            stars += 1;
            let e = skew_randic_spectrum(&og).unwrap().energy();
            if (e - 2.0).abs() > TOL {
                bad.push(format!("star {n}: energy {e}"));
            }
        }
    }
    fail_if(bad, format!("P_2, 8 orientations of K_3, oddly oriented C_4, {stars} odd-star orientations"))
}

fn tree_independence() -> Outcome {
    let mut bad = Vec::new();
    let mut orientations = 0u64;
    let trees = generate_range(Family::Trees, 1, 8).unwrap();
    for t in &trees {
        let energy = randic_energy(t).unwrap();
        let reference = skew_randic_coeffs(&OrientedGraph::low_to_high(t.clone())).unwrap();
        for og in all_orientations(t) {
            orientations += 1;
            if skew_randic_coeffs(&og).unwrap() != reference {
                bad.push(format!("coefficients differ on {:?}", og.arcs().collect::<Vec<_>>()));
            }
            let e = skew_randic_spectrum(&og).unwrap().energy();
            if (e - energy).abs() > TOL {
                bad.push(format!("energy {e} vs Randić energy {energy} on {:?}", og.arcs().collect::<Vec<_>>()));
            }
        }
    }
    fail_if(bad, format!("{} trees, {orientations} orientations", trees.len()))
}

fn three_way_iff() -> Outcome {
    let mut bad = Vec::new();
    let mut orientations = 0u64;
    let mut holding = 0u64;
    let graphs = generate_range(Family::Bipartite, 1, 6).unwrap();
    for g in &graphs {
        for og in all_orientations(g) {
            orientations += 1;
            let relation = spectral_relation_holds(&og).unwrap().holds;
            let parity = is_parity_linked(&og).unwrap().parity_linked;
            let canonical = is_parity_linked_fast(&og).unwrap();
            holding += u64::from(relation);
            if relation != parity || parity != canonical {
                bad.push(format!(
                    "{:?}: relation {relation}, parity-linked {parity}, switching to canonical {canonical}",
                    og.arcs().collect::<Vec<_>>()
                ));
            }
        }
    }
    fail_if(bad, format!("{} graphs, {orientations} orientations ({holding} satisfy the relation)", graphs.len()))
}

fn forest_separation() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for g in generate_range(Family::Bipartite, 1, 6).unwrap() {
        if structural_predicates(&g).tree {
            continue;
        }
        checked += 1;
        if all_orientations(&g).all(|og| spectral_relation_holds(&og).unwrap().holds) {
            bad.push(format!("no violating orientation for {:?}", g.edges()));
        }
    }
    let k3_violations = all_orientations(&Graph::complete(3))
        .filter(|og| !spectral_relation_holds(og).unwrap().holds)
        .count();
    if k3_violations != 8 {
        bad.push(format!("K_3: only {k3_violations} of 8 orientations violate"));
    }
    fail_if(bad, format!("{checked} bipartite non-trees each have a violating orientation; K_3 8/8 violate"))
}

/// Components are all `P_2`, except one `P_3` when `n` is odd.
fn matching_union_by_components(g: &Graph) -> bool {
    let comps = components(g);
    let p3 = comps.iter().filter(|c| c.len() == 3).count();
    let all_paths = comps.iter().all(|c| {
        let edges = g.edges().iter().filter(|(u, _)| c.contains(u)).count();
        (c.len() == 2 || c.len() == 3) && edges == c.len() - 1
    });
    all_paths && p3 == g.n() % 2
}

fn li_yang_equality() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut lower_hits = 0;
    let mut upper_hits = 0;
    for g in generate_range(Family::Graphs, 2, 7).unwrap() {
        if g.has_isolated_vertex() {
            continue;
        }
        checked += 1;
        let r = randic_index(&g);
        let (lo, hi) = randic_index_bounds_general(g.n()).unwrap();
        let complete = g.m() == g.n() * (g.n() - 1) / 2;
        let union = matching_union_by_components(&g);
        lower_hits += usize::from(r == lo);
        upper_hits += usize::from(r == hi);
        if r < lo || r > hi || (r == lo) != complete || (r == hi) != union {
            bad.push(format!("{:?}: R_-1 = {r}, bounds [{lo}, {hi}]", g.edges()));
        }
    }
    fail_if(bad, format!("{checked} graphs; lower attained {lower_hits} times, upper {upper_hits} times"))
}

fn two_eigenvalues() -> Outcome {
    let mut bad = Vec::new();
    let graphs: Vec<Graph> = connected(7).into_iter().filter(|g| g.n() >= 2).collect();
    for g in &graphs {
        let s = randic_spectrum(g).unwrap();
        let gap = TOL * (1.0 + randic_matrix(g).frobenius_norm());
        let distinct = s.distinct_values(gap).len();
        let complete = g.m() == g.n() * (g.n() - 1) / 2;
        if (distinct == 2) != complete {
            bad.push(format!("{:?}: {distinct} distinct eigenvalues", g.edges()));
        }
    }
    fail_if(bad, format!("{} connected graphs", graphs.len()))
}

fn declared_out_of_scope() -> Outcome {
    let mut bad = Vec::new();
    // the sharp tree maximum stays below the general tree bound in all seven residues
    for n in 720..727 {
        let b = tree_randic_index_bounds(n).unwrap();
        let sharp = b.upper_sharp.clone().unwrap();
        if sharp > b.upper || sharp < b.lower {
            bad.push(format!("n = {n}: sharp maximum {sharp} outside [{}, {}]", b.lower, b.upper));
        }
    }
    let mut trees = 0;
    for n in 2..=12 {
        let family = generate_family(Family::ChemicalTrees, n).unwrap();
        let lower = chemical_tree_lower(n).unwrap();
        let upper: Option<Rational> = (n > 6).then(|| chemical_tree_upper(n).unwrap().value);
        for t in &family {
            trees += 1;
            let r = randic_index(t);
            if r < lower || upper.as_ref().is_some_and(|u| r > *u) {
                bad.push(format!("n = {n}: R_-1 = {r} outside the chemical-tree bounds"));
            }
        }
        if upper.as_ref().is_some_and(|u| u.is_zero()) {
            bad.push(format!("n = {n}: degenerate upper bound"));
        }
    }
    fail_if(
        bad,
        format!("formulas evaluated for n = 720..726; {trees} chemical trees up to n = 12 within bounds; attainment not reproduced"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact coefficients match the numeric oracle", coefficient_oracle),
        ("trace identity", trace_identity),
        ("energy bounds hold", energy_bounds_hold),
        ("tightness witnesses", tightness_witnesses),
        ("tree orientation independence", tree_independence),
        ("relation, parity-linked and canonical switching agree", three_way_iff),
        ("forest and non-forest separation", forest_separation),
        ("R_-1 bound equality cases", li_yang_equality),
        ("two distinct Randić eigenvalues iff complete", two_eigenvalues),
        ("large-order formulas (declared not reproducible)", declared_out_of_scope),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
