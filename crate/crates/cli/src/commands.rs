use std::fmt;
use std::io::Read;
use std::path::Path;

use skew_randic::bounds::{
    derived_energy_bounds_with, energy_bounds_with, order_only_energy_bounds_with,
    randic_index_bounds_general, BoundFamily, BoundReport,
};
use skew_randic::charpoly::CoefficientPlan;
use skew_randic::families::{generate_family, Family};
use skew_randic::graph::{parse_oriented, structural_predicates};
use skew_randic::orientations::{
    are_switching_equivalent, canonical_orientation, is_parity_linked, spectral_relation_with_plan,
    verify_cap, verify_theorem, RelationWitness, TheoremId, VerificationReport, VerifyError,
    VerifyOptions,
};
use skew_randic::spectra::{
    abs_determinant, randic_energy, randic_index, randic_spectrum, rational_to_f64,
    skew_randic_matrix, spectrum,
};
use skew_randic::sweep::{map_items, Exec, OrientationSpace};
use skew_randic::{Error, OrientedGraph};

use crate::output::{render, Format, Record, Value};
use crate::{Command, Common, SweepArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Core(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(s) | CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

pub struct Outcome {
    pub text: String,
    pub status: u8,
}

/// Exit status when a theorem check finds a counterexample.
pub const COUNTEREXAMPLE_STATUS: u8 = 2;

pub fn run(command: Command, common: &Common) -> CliResult<Outcome> {
    let exec = configure_pool(common)?;
    let simple = |records: Vec<Record>| Outcome { text: render(common.format, &records), status: 0 };
    match command {
        Command::Spectrum(i) => Ok(simple(per_input(&i.paths, spectrum_record)?)),
        Command::Energy(i) => Ok(simple(per_input(&i.paths, energy_record)?)),
        Command::Charpoly(i) => Ok(simple(flat_per_input(&i.paths, charpoly_records)?)),
        Command::Bounds(i) => {
            Ok(simple(flat_per_input(&i.paths, |og| bounds_records(og, common.tolerance))?))
        }
        Command::Relation(i) => Ok(simple(per_input(&i.paths, relation_record)?)),
        Command::Verify(args) => verify(&args, common, exec),
        Command::Sweep(args) => Ok(simple(sweep(&args, common, exec)?)),
    }
}

fn configure_pool(common: &Common) -> CliResult<Exec> {
    match common.jobs {
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
            Ok(Exec::Parallel)
        }
        _ => Ok(Exec::default()),
    }
}

fn read_input(path: &Path) -> CliResult<OrientedGraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    parse_oriented(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn per_input(paths: &[std::path::PathBuf], f: impl Fn(&OrientedGraph) -> CliResult<Record>) -> CliResult<Vec<Record>> {
    flat_per_input(paths, |og| Ok(vec![f(og)?]))
}

fn flat_per_input(
    paths: &[std::path::PathBuf],
    f: impl Fn(&OrientedGraph) -> CliResult<Vec<Record>>,
) -> CliResult<Vec<Record>> {
    let mut out = Vec::new();
    for path in paths {
        let og = read_input(path)?;
        let label = path.display().to_string();
        for r in f(&og).map_err(|e| CliError::Io(format!("{label}: {e}")))? {
            let mut tagged = Record::new().with("input", label.as_str());
            tagged.0.extend(r.0);
            out.push(tagged);
        }
    }
    Ok(out)
}

fn spectrum_record(og: &OrientedGraph) -> CliResult<Record> {
    let s = spectrum(&skew_randic_matrix(og))?;
    let r = randic_spectrum(og.base())?;
    Ok(Record::new()
        .with("n", og.n())
        .with("m", og.base().m())
        .with("mu", s.values.clone())
        .with("energy", s.energy())
        .with("randic_eigenvalues", r.values.clone())
        .with("randic_energy", r.energy()))
}

fn energy_record(og: &OrientedGraph) -> CliResult<Record> {
    let g = og.base();
    let index = randic_index(g);
    Ok(Record::new()
        .with("n", og.n())
        .with("m", g.m())
        .with("energy", spectrum(&skew_randic_matrix(og))?.energy())
        .with("randic_energy", randic_energy(g)?)
        .with("randic_index", index.to_string())
        .with("randic_index_value", rational_to_f64(&index))
        .with("abs_det", abs_determinant(og)?))
}

fn charpoly_records(og: &OrientedGraph) -> CliResult<Vec<Record>> {
    let plan = CoefficientPlan::new(og.base())?;
    let a = plan.randic();
    let c = plan.skew(og.reversed());
    Ok(a.coeffs
        .iter()
        .zip(&c.coeffs)
        .enumerate()
        .map(|(i, (a, c))| {
            Record::new()
                .with("i", i)
                .with("a", a.to_string())
                .with("c", c.to_string())
                .with("a_value", rational_to_f64(a))
                .with("c_value", rational_to_f64(c))
        })
        .collect())
}

fn bound_record(name: &str, r: &BoundReport) -> Record {
    Record::new()
        .with("bound", name)
        .with("lower", r.lower)
        .with("value", r.value)
        .with("upper", r.upper)
        .with("lower_tight", r.lower_tight)
        .with("upper_tight", r.upper_tight)
        .with("certificate", r.equality_certificate.map(|c| format!("{c:?}")))
        .with("lower_characterization", r.lower_characterization)
        .with("upper_characterization", r.upper_characterization)
}

fn bounds_records(og: &OrientedGraph, tol: f64) -> CliResult<Vec<Record>> {
    let g = og.base();
    let pred = structural_predicates(g);
    let mut out = vec![
        bound_record("energy", &energy_bounds_with(og, tol)?),
        bound_record("order-only", &order_only_energy_bounds_with(og, tol)?),
    ];
    if pred.tree {
        out.push(bound_record("tree", &derived_energy_bounds_with(og, BoundFamily::Tree, tol)?));
        if pred.chemical {
            let r = derived_energy_bounds_with(og, BoundFamily::ChemicalTree, tol)?;
            out.push(bound_record("chemical-tree", &r));
        }
    }
    let (lo, hi) = randic_index_bounds_general(g.n())?;
    let index = randic_index(g);
    out.push(
        Record::new()
            .with("bound", "randic-index")
            .with("lower", rational_to_f64(&lo))
            .with("value", rational_to_f64(&index))
            .with("upper", rational_to_f64(&hi))
            .with("lower_tight", index == lo)
            .with("upper_tight", index == hi)
            .with("lower_characterization", pred.complete)
            .with("upper_characterization", skew_randic::bounds::is_matching_union(g)),
    );
    Ok(out)
}

fn relation_record(og: &OrientedGraph) -> CliResult<Record> {
    let g = og.base();
    let plan = CoefficientPlan::new(g)?;
    let verdict = spectral_relation_with_plan(&plan, og.reversed());
    let audit = is_parity_linked(og)?;
    let witness = match verdict.witness {
        RelationWitness::ExactCoefficientMatch => "exact-match".to_string(),
        RelationWitness::CoefficientMismatch(i) => format!("mismatch at {i}"),
    };
    let switch = match canonical_orientation(g) {
        Ok(c) => are_switching_equivalent(og, &c)?,
        Err(Error::NotBipartite) => None,
        Err(e) => return Err(e.into()),
    };
    let violations: Vec<String> = audit
        .violations
        .iter()
        .map(|c| c.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"))
        .collect();
    Ok(Record::new()
        .with("holds", verdict.holds)
        .with("witness", witness)
        .with("bipartite", audit.bipartite)
        .with("parity_linked", audit.parity_linked)
        .with("even_cycles", audit.even_cycles)
        .with("violations", violations)
        .with("canonical_switch", switch.map(|w| Value::from(w.vertices().to_vec()))))
}

fn options(common: &Common, exec: Exec) -> VerifyOptions {
    VerifyOptions {
        exec,
        switch_reduction: !common.no_switch_reduction,
        tolerance: common.tolerance,
        ..VerifyOptions::default()
    }
}

fn report_record(r: &VerificationReport, status: &str) -> Record {
    Record::new()
        .with("theorem", r.theorem.name())
        .with("family", r.family.name())
        .with("n_min", r.n_min)
        .with("n_max", r.n_max)
        .with("instances", r.instances)
        .with("orientations", r.orientations)
        .with("checks", r.checks)
        .with("switch_reduction", r.switch_reduction)
        .with("counterexamples", r.counterexample_count)
        .with("max_deviation", r.max_deviation)
        .with("status", status)
        .with("notes", r.notes.clone())
}

fn counterexample_records(r: &VerificationReport) -> Vec<Record> {
    r.counterexamples
        .iter()
        .map(|c| {
            Record::new()
                .with("theorem", r.theorem.name())
                .with("n", c.n)
                .with("graph", c.graph.as_str())
                .with("orientation", c.orientation.clone())
                .with("detail", c.detail.as_str())
        })
        .collect()
}

fn verify(args: &VerifyArgs, common: &Common, exec: Exec) -> CliResult<Outcome> {
    let opts = options(common, exec);
    let jobs: Vec<(TheoremId, Family, usize)> = match args.theorem {
        Some(t) => {
            let family = args.family.unwrap_or(t.default_family());
            vec![(t, family, args.n_max)]
        }
        None => TheoremId::ALL
            .into_iter()
            .map(|t| {
                let family = args.family.unwrap_or(t.default_family());
                (t, family, args.n_max.min(verify_cap(family)))
            })
            .collect(),
    };
    let mut summary = Vec::new();
    let mut details = Vec::new();
    let mut failures = 0u64;
    let mut cap_error = None;
    for (theorem, family, n_max) in jobs {
        let (report, status) = match verify_theorem(theorem, family, args.n_min, n_max, &opts) {
            Ok(r) => {
                let status = if r.passed() { "pass" } else { "FAIL" };
                (r, status)
            }
            Err(VerifyError::Invalid(e)) => return Err(CliError::Usage(format!("{theorem}: {e}"))),
            Err(VerifyError::CapExceeded { cap, partial }) => {
                cap_error.get_or_insert(format!("{theorem}: cap exceeded: {cap}"));
                (*partial, "partial")
            }
        };
        failures += report.counterexample_count;
        let mut rec = report_record(&report, status);
        if common.format == Format::Json {
            let cx = counterexample_records(&report).into_iter().map(Value::Object).collect();
            rec = rec.with("counterexample_list", Value::List(cx));
        } else {
            details.extend(counterexample_records(&report));
        }
        summary.push(rec);
    }
    let mut text = render(common.format, &summary);
    if common.format == Format::Table {
        if !details.is_empty() {
            text.push('\n');
            text.push_str(&render(Format::Table, &details));
        }
        text.push_str(&format!("{failures} counterexamples\n"));
    } else if common.format == Format::Csv && !details.is_empty() {
        text.push('\n');
        text.push_str(&render(Format::Csv, &details));
    }
    if let Some(cap) = cap_error {
        print!("{text}");
        return Err(CliError::Usage(cap));
    }
    let status = if failures > 0 { COUNTEREXAMPLE_STATUS } else { 0 };
    Ok(Outcome { text, status })
}

fn sweep(args: &SweepArgs, common: &Common, exec: Exec) -> CliResult<Vec<Record>> {
    let cap = verify_cap(args.family);
    if args.n_max > cap {
        return Err(CliError::Usage(format!("sweep cap for {} is n <= {cap}", args.family)));
    }
    let reduce = !common.no_switch_reduction;
    let mut out = Vec::new();
    for n in args.n_min..=args.n_max {
        let graphs = generate_family(args.family, n)?;
        let rows = map_items(exec, &graphs, |g| -> CliResult<Record> {
            let plan = CoefficientPlan::new(g)?;
            let space = OrientationSpace::new(g, reduce)?;
            let (mut lo, mut hi, mut holds) = (f64::INFINITY, f64::NEG_INFINITY, 0u64);
            for i in 0..space.len() {
                let reversed = space.reversed(i);
                holds += u64::from(spectral_relation_with_plan(&plan, &reversed).holds);
                let og = OrientedGraph::with_reversals(g.clone(), reversed);
                let e = spectrum(&skew_randic_matrix(&og))?.energy();
                lo = lo.min(e);
                hi = hi.max(e);
            }
            let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            Ok(Record::new()
                .with("n", n)
                .with("m", g.m())
                .with("edges", edges.join(" "))
                .with("orientations", space.len())
                .with("randic_index", randic_index(g).to_string())
                .with("randic_energy", randic_energy(g)?)
                .with("min_energy", lo)
                .with("max_energy", hi)
                .with("relation_holds", holds))
        });
        for r in rows {
            out.push(r?);
        }
    }
    Ok(out)
}
