//! Energy bounds for oriented graphs and `R_{-1}` bounds for graph families,
//! each paired with its stated equality characterization.
//!
//! Every report carries two kinds of information: `lower_tight` and
//! `upper_tight` are measured against the computed energy, while the
//! `*_characterization` fields evaluate the structural condition under which
//! the bound is claimed to be attained. Sweeps compare the two.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::graph::{structural_predicates, Graph, OrientedGraph};
use crate::spectra::{
    randic_index, randic_spectrum, rational_to_f64, skew_randic_matrix, spectrum, Spectrum,
};
use crate::{Error, Rational, Result, DEFAULT_TOLERANCE};

/// Below this, `p = |det R_s|` counts as zero and the `p^{2/n}` term is dropped.
pub const P_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EqualityCertificate {
    /// All `|mu_j|`, `j <= n/2`, coincide.
    AllModuliEqual,
    /// Exactly two nonzero skew Randić eigenvalues.
    TwoNonzeroEigenvalues,
    /// `R_s^T R_s = I / (n - 1)`.
    ScaledOrthogonal,
    /// Disjoint union of `P_2`'s, plus one `P_3` when `n` is odd.
    MatchingUnion,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    pub lower_tight: bool,
    pub upper_tight: bool,
    pub equality_certificate: Option<EqualityCertificate>,
    pub lower_characterization: Option<bool>,
    pub upper_characterization: Option<bool>,
}

impl BoundReport {
    /// `lower - eps <= value <= upper + eps`.
    pub fn holds(&self, eps: f64) -> bool {
        self.lower - eps <= self.value && self.value <= self.upper + eps
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn qi(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Shared spectral data for one oriented graph.
struct SkewData {
    n: usize,
    spectrum: Spectrum,
    energy: f64,
    r_minus1: Rational,
    p: f64,
}

impl SkewData {
    fn new(og: &OrientedGraph) -> Result<Self> {
        if og.base().has_isolated_vertex() {
            return Err(Error::IsolatedVertex);
        }
        if og.n() < 2 {
            return Err(Error::OrderTooSmall { n: og.n(), min: 2 });
        }
        let spectrum = spectrum(&skew_randic_matrix(og))?;
        let p = spectrum.values.iter().map(|v| v.abs()).product();
        Ok(SkewData {
            n: og.n(),
            energy: spectrum.energy(),
            spectrum,
            r_minus1: randic_index(og.base()),
            p,
        })
    }

    /// `n (n - 2) p^{2/n}`, zero for odd `n` or negligible `p`.
    fn p_term(&self) -> f64 {
        p_term(self.n, self.p)
    }

    fn moduli_equal(&self, tol: f64) -> bool {
        let half = &self.spectrum.values[..self.n / 2];
        let max = half.iter().copied().fold(f64::MIN, f64::max);
        let min = half.iter().copied().fold(f64::MAX, f64::min);
        max - min <= tol
    }

    fn two_nonzero(&self) -> bool {
        self.spectrum.nonzero_count() == 2
    }
}

pub fn p_term(n: usize, p: f64) -> f64 {
    if n % 2 == 1 || p < P_FLOOR {
        0.0
    } else {
        (n * (n - 2)) as f64 * p.powf(2.0 / n as f64)
    }
}

fn report(
    data: &SkewData,
    lower: f64,
    upper: f64,
    tol: f64,
    certify: impl Fn(bool, bool) -> Option<EqualityCertificate>,
    characterization: (Option<bool>, Option<bool>),
) -> BoundReport {
    let lower_tight = (data.energy - lower).abs() <= tol;
    let upper_tight = (data.energy - upper).abs() <= tol;
    BoundReport {
        lower,
        upper,
        value: data.energy,
        lower_tight,
        upper_tight,
        equality_certificate: certify(lower_tight, upper_tight),
        lower_characterization: characterization.0,
        upper_characterization: characterization.1,
    }
}

/// `sqrt(4 R_{-1} + n(n-2) p^{2/n}) <= RE_s <= 2 sqrt(floor(n/2) R_{-1})`.
pub fn energy_bounds(og: &OrientedGraph) -> Result<BoundReport> {
    energy_bounds_with(og, DEFAULT_TOLERANCE)
}

pub fn energy_bounds_with(og: &OrientedGraph, tol: f64) -> Result<BoundReport> {
    let data = SkewData::new(og)?;
    let r = rational_to_f64(&data.r_minus1);
    let lower = (4.0 * r + data.p_term()).sqrt();
    let upper = 2.0 * ((data.n / 2) as f64 * r).sqrt();
    let certify = |lt: bool, ut: bool| {
        let lower_cert = if data.p_term() == 0.0 {
            data.two_nonzero().then_some(EqualityCertificate::TwoNonzeroEigenvalues)
        } else {
            data.moduli_equal(tol).then_some(EqualityCertificate::AllModuliEqual)
        };
        let upper_cert = data.moduli_equal(tol).then_some(EqualityCertificate::AllModuliEqual);
        match (lt, ut) {
            (true, _) if lower_cert.is_some() => lower_cert,
            (_, true) => upper_cert,
            _ => None,
        }
    };
    Ok(report(&data, lower, upper, tol, certify, (None, None)))
}

/// True when `g` is a disjoint union of `P_2`'s (even `n`) or of
/// `(n-3)/2` `P_2`'s and one `P_3` (odd `n`).
pub fn is_matching_union(g: &Graph) -> bool {
    let n = g.n();
    if n < 2 || g.has_isolated_vertex() || g.max_degree() > 2 {
        return false;
    }
    let twos = g.degrees().iter().filter(|&&d| d == 2).count();
    if n % 2 == 0 {
        twos == 0
    } else {
        twos == 1
    }
}

/// Largest entrywise deviation of `R_s^T R_s` from `I / (n - 1)`.
pub fn scaled_orthogonality_gap(og: &OrientedGraph) -> f64 {
    let n = og.n();
    let m = skew_randic_matrix(og);
    let gram = m.entries().transpose() * m.entries();
    let target = DMatrix::<f64>::identity(n, n) / (n as f64 - 1.0);
    (gram - target).amax()
}

/// `sqrt(2n/(n-1) + n(n-2) p^{2/n}) <= RE_s <= 2 floor(n/2)`.
pub fn order_only_energy_bounds(og: &OrientedGraph) -> Result<BoundReport> {
    order_only_energy_bounds_with(og, DEFAULT_TOLERANCE)
}

pub fn order_only_energy_bounds_with(og: &OrientedGraph, tol: f64) -> Result<BoundReport> {
    let data = SkewData::new(og)?;
    let n = data.n;
    let lower = (2.0 * n as f64 / (n as f64 - 1.0) + data.p_term()).sqrt();
    let upper = 2.0 * (n / 2) as f64;
    let complete = structural_predicates(og.base()).complete;
    let lower_char = complete
        && if n % 2 == 1 {
            data.two_nonzero()
        } else {
            scaled_orthogonality_gap(og) < tol
        };
    let upper_char = is_matching_union(og.base());
    let certify = |lt: bool, ut: bool| {
        if lt && lower_char {
            Some(if n % 2 == 1 {
                EqualityCertificate::TwoNonzeroEigenvalues
            } else {
                EqualityCertificate::ScaledOrthogonal
            })
        } else if ut && upper_char {
            Some(EqualityCertificate::MatchingUnion)
        } else {
            None
        }
    };
    Ok(report(&data, lower, upper, tol, certify, (Some(lower_char), Some(upper_char))))
}

/// `n / (2(n-1)) <= R_{-1}(G) <= floor(n/2)` for graphs without isolated vertices.
pub fn randic_index_bounds_general(n: usize) -> Result<(Rational, Rational)> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let n = n as i64;
    Ok((q(n, 2 * (n - 1)), qi(n / 2)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeIndexBounds {
    #[serde(serialize_with = "ser_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: Rational,
    /// Maximum of `R_{-1}` over trees of order `n`, known for `n >= 720`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub upper_sharp: Option<Rational>,
}

/// `1 <= R_{-1}(T) <= (5n+8)/18`, plus the sharp maximum for `n >= 720`.
pub fn tree_randic_index_bounds(n: usize) -> Result<TreeIndexBounds> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let upper_sharp = (n >= 720).then(|| sharp_tree_maximum(n));
    let n = n as i64;
    Ok(TreeIndexBounds { lower: Rational::one(), upper: q(5 * n + 8, 18), upper_sharp })
}

fn sharp_tree_maximum(n: usize) -> Rational {
    let t = (n - 1) % 7;
    let n = n as i64;
    let base = q(15 * n - 1, 56);
    let unit = q(1, 56);
    base + match t {
        0 => Rational::zero(),
        1 => -unit + q(7, 4 * (n + 5)),
        2 => -q(3, 5) * unit - q(7, 20 * (n - 3)),
        3 => -q(2, 3) * unit + q(7, 6 * (n + 3)),
        4 => -q(6, 5) * unit - q(7, 20 * (n - 12)),
        5 => -q(1, 3) * unit + q(7, 12 * (n + 1)),
        _ => -q(29, 27) * unit - q(35, 36 * (n - 3)),
    }
}

/// Minimum of `R_{-1}` over chemical trees of order `n`.
pub fn chemical_tree_lower(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    Ok(match n {
        0..=5 => Rational::one(),
        6 => q(11, 8),
        7 => q(3, 2),
        10 => qi(2),
        _ => q(3 * n as i64 + 1, 16),
    })
}

/// One of the two integer-system terms in the chemical-tree upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemTerm {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// The `k` attaining the maximum.
    pub k: usize,
    /// `N_4` (for `F_2`) or `N_1` (for `F_3`) at that `k`.
    pub minimizer: u64,
    /// Minimal solution for each `k = 0, 1, 2`; `None` when infeasible.
    pub per_k: Vec<Option<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChemicalUpper {
    /// `n mod 3`, selecting the `F_1` case.
    pub residue: usize,
    #[serde(serialize_with = "ser_rational")]
    pub f1: Rational,
    pub f2: Option<SystemTerm>,
    pub f3: Option<SystemTerm>,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChemicalTreeBounds {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lower: Rational,
    /// Present for `n > 6`.
    pub upper: Option<ChemicalUpper>,
}

/// Solutions `(n1, n3, n4)` in `0..=n` of `n3 + 2 n4 + 2 = n1`,
/// `2 n1 + n3 + n4 = n - k`.
fn system_solutions(n: usize, k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    let rhs = n.checked_sub(k);
    (0..=n).flat_map(move |n4| {
        (0..=n).filter_map(move |n3| {
            let n1 = n3 + 2 * n4 + 2;
            (n1 <= n && Some(2 * n1 + n3 + n4) == rhs).then_some((n1, n3, n4))
        })
    })
}

fn system_term(
    n: usize,
    minimize: impl Fn(usize) -> Option<u64>,
    score: impl Fn(u64, usize) -> Rational,
) -> Option<SystemTerm> {
    let per_k: Vec<Option<u64>> = (0..=2).map(&minimize).collect();
    let base = q(3 * n as i64 + 1, 16);
    per_k
        .iter()
        .enumerate()
        .filter_map(|(k, m)| m.map(|m| (k, m, score(m, k))))
        .max_by(|a, b| a.2.cmp(&b.2))
        .map(|(k, minimizer, s)| SystemTerm {
            value: base.clone() + s / qi(144),
            k,
            minimizer,
            per_k: per_k.clone(),
        })
}

/// `max{F_1, F_2, F_3}`; `F_2`/`F_3` are left out when their system has no
/// solution for any `k`.
pub fn chemical_tree_upper(n: usize) -> Result<ChemicalUpper> {
    if n <= 6 {
        return Err(Error::ChemicalUpperDomain);
    }
    let ni = n as i64;
    let base = q(3 * ni + 1, 16);
    let residue = n % 3;
    let f1 = base
        + match residue {
            1 => q(31 * ni + 53, 3 * 144),
            2 => (q(31 * ni + 22, 3) + qi(9)) / qi(144),
            _ => (q(31 * ni - 9, 3) + qi(18)) / qi(144),
        };
    let f2 = system_term(
        n,
        |k| {
            system_solutions(n, k)
                .filter(|&(_, n3, n4)| n3 <= 2 * n4 + 2)
                .map(|(_, _, n4)| n4 as u64)
                .min()
        },
        |n4, k| qi(11 * ni - n4 as i64 - 2 * k as i64 + 10),
    );
    let f3 = system_term(
        n,
        |k| {
            system_solutions(n, k)
                .filter(|&(_, n3, n4)| n3 >= 2 * n4 + 2 && n4 >= 1)
                .map(|(n1, _, _)| n1 as u64)
                .min()
        },
        |n1, k| qi(4 * ni + 19 * n1 as i64 + 5 * k as i64 + 4),
    );
    let mut value = f1.clone();
    for t in [&f2, &f3].into_iter().flatten() {
        if t.value > value {
            value = t.value.clone();
        }
    }
    Ok(ChemicalUpper { residue, f1, f2, f3, value })
}

pub fn chemical_tree_randic_bounds(n: usize) -> Result<ChemicalTreeBounds> {
    Ok(ChemicalTreeBounds {
        n,
        lower: chemical_tree_lower(n)?,
        upper: if n > 6 { Some(chemical_tree_upper(n)?) } else { None },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundFamily {
    General,
    Tree,
    ChemicalTree,
}

/// Energy bounds obtained by substituting family-specific `R_{-1}` bounds.
pub fn derived_energy_bounds(og: &OrientedGraph, family: BoundFamily) -> Result<BoundReport> {
    derived_energy_bounds_with(og, family, DEFAULT_TOLERANCE)
}

pub fn derived_energy_bounds_with(og: &OrientedGraph, family: BoundFamily, tol: f64) -> Result<BoundReport> {
    let g = og.base();
    let pred = structural_predicates(g);
    let n = g.n();
    let half = (n / 2) as f64;
    match family {
        BoundFamily::General => order_only_energy_bounds_with(og, tol),
        BoundFamily::Tree => {
            if !pred.tree {
                return Err(Error::FamilyMismatch("trees".into()));
            }
            let data = SkewData::new(og)?;
            let upper_index = rational_to_f64(&tree_randic_index_bounds(n)?.upper);
            let lower = (4.0 + data.p_term()).sqrt();
            let upper = 2.0 * (half * upper_index).sqrt();
            let lower_char = (pred.star && n % 2 == 1) || n == 2;
            let upper_char = (n > 3).then_some(false);
            Ok(report(&data, lower, upper, tol, |_, _| None, (Some(lower_char), upper_char)))
        }
        BoundFamily::ChemicalTree => {
            if !(pred.tree && pred.chemical) {
                return Err(Error::FamilyMismatch("chemical-trees".into()));
            }
            let data = SkewData::new(og)?;
            let lower_index = rational_to_f64(&chemical_tree_lower(n)?);
            let upper_index = if n > 6 {
                rational_to_f64(&chemical_tree_upper(n)?.value)
            } else {
                rational_to_f64(&tree_randic_index_bounds(n)?.upper)
            };
            let lower = (4.0 * lower_index + data.p_term()).sqrt();
            let upper = 2.0 * (half * upper_index).sqrt();
            let lower_char = pred.star && matches!(n, 2 | 3 | 5);
            let upper_char = (n > 6).then_some(false);
            Ok(report(&data, lower, upper, tol, |_, _| None, (Some(lower_char), upper_char)))
        }
    }
}

/// Number of distinct Randić eigenvalues, clustering sorted eigenvalues whose
/// gap is at most `tol * (1 + |R|_F)`.
pub fn distinct_randic_eigenvalues(g: &Graph, tol: f64) -> Result<usize> {
    let s = randic_spectrum(g)?;
    let norm: f64 = s.values.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(s.distinct_values(tol * (1.0 + norm)).len())
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}
