//! Randić and skew Randić matrices, their spectra, energies, the general
//! Randić index and `|det R_s|`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::graph::{Graph, OrientedGraph};
use crate::{Error, Rational, Result};

/// Relative zero-snapping threshold for eigenvalues.
pub const ZERO_SNAP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixKind {
    Symmetric,
    Skew,
}

/// Dense real matrix that is symmetric or skew-symmetric by construction.
///
/// Matrices built from graphs keep the degree product `d_i d_j` of every
/// nonzero upper-triangular entry so that squared quantities stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    kind: MatrixKind,
    entries: DMatrix<f64>,
    degree_products: Option<Vec<(usize, usize, u64)>>,
}

impl RealMatrix {
    /// Wraps raw entries; fails unless the matrix is exactly (skew-)symmetric.
    pub fn from_entries(kind: MatrixKind, entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(Error::Unsupported("matrix must be square".into()));
        }
        if n > Graph::MAX_ORDER {
            return Err(Error::OrderTooLarge { n, max: Graph::MAX_ORDER });
        }
        let ok = (0..n).all(|i| {
            (0..n).all(|j| match kind {
                MatrixKind::Symmetric => entries[(i, j)] == entries[(j, i)],
                MatrixKind::Skew => entries[(i, j)] == -entries[(j, i)],
            })
        });
        if !ok {
            return Err(Error::Unsupported(format!("matrix is not {kind:?}")));
        }
        Ok(RealMatrix { kind, entries, degree_products: None })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `sum_ij m_ij^2` in exact arithmetic, available for graph matrices.
    pub fn exact_frobenius_sq(&self) -> Option<Rational> {
        self.degree_products.as_ref().map(|dp| {
            dp.iter().fold(Rational::zero(), |acc, &(_, _, d)| {
                acc + Rational::new(BigInt::from(2), BigInt::from(d))
            })
        })
    }
}

fn inverse_sqrt_degrees(g: &Graph) -> Vec<f64> {
    g.degrees()
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect()
}

fn degree_products(g: &Graph) -> Vec<(usize, usize, u64)> {
    g.edges()
        .iter()
        .map(|&(u, v)| (u, v, (g.degree(u) * g.degree(v)) as u64))
        .collect()
}

/// `R(G)`: entry `1/sqrt(d_i d_j)` on edges, zero elsewhere.
pub fn randic_matrix(g: &Graph) -> RealMatrix {
    let n = g.n();
    let mut entries = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        let x = edge_weight(g, u, v);
        entries[(u, v)] = x;
        entries[(v, u)] = x;
    }
    RealMatrix { kind: MatrixKind::Symmetric, entries, degree_products: Some(degree_products(g)) }
}

/// `S(G^sigma)`: `+1` at `(i, j)` for an arc `i -> j`, `-1` at `(j, i)`.
pub fn skew_adjacency_matrix(og: &OrientedGraph) -> DMatrix<f64> {
    let n = og.n();
    let mut s = DMatrix::zeros(n, n);
    for (t, h) in og.arcs() {
        s[(t, h)] = 1.0;
        s[(h, t)] = -1.0;
    }
    s
}

/// `R_s(G^sigma)`: `+1/sqrt(d_i d_j)` at `(i, j)` for an arc `i -> j`.
pub fn skew_randic_matrix(og: &OrientedGraph) -> RealMatrix {
    let g = og.base();
    let n = g.n();
    let mut entries = DMatrix::zeros(n, n);
    for (t, h) in og.arcs() {
        let x = edge_weight(g, t, h);
        entries[(t, h)] = x;
        entries[(h, t)] = -x;
    }
    let m = RealMatrix { kind: MatrixKind::Skew, entries, degree_products: Some(degree_products(g)) };
    debug_assert!(factorization_residual(og).map_or(true, |r| r <= FACTORIZATION_SLACK));
    m
}

/// Rounding allowance between `1/sqrt(d_i d_j)` and `(1/sqrt d_i)(1/sqrt d_j)`.
pub const FACTORIZATION_SLACK: f64 = 4.0 * f64::EPSILON;

fn edge_weight(g: &Graph, u: usize, v: usize) -> f64 {
    1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt()
}

/// `max |R_s - D^{-1/2} S D^{-1/2}|`, or `None` when an isolated vertex makes
/// `D^{-1/2}` undefined.
pub fn factorization_residual(og: &OrientedGraph) -> Option<f64> {
    let g = og.base();
    if g.has_isolated_vertex() {
        return None;
    }
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(inverse_sqrt_degrees(g)));
    let product = &d * skew_adjacency_matrix(og) * &d;
    let n = og.n();
    let mut rs = DMatrix::zeros(n, n);
    for (t, h) in og.arcs() {
        let x = edge_weight(g, t, h);
        rs[(t, h)] = x;
        rs[(h, t)] = -x;
    }
    Some((rs - product).amax())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumKind {
    /// Real eigenvalues `lambda_j` of a symmetric matrix.
    Symmetric,
    /// Values `mu_j` such that the eigenvalues of a skew matrix are `i mu_j`.
    SkewImaginaryParts,
}

/// Eigenvalues (or their imaginary parts) sorted non-increasingly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub kind: SpectrumKind,
}

impl Spectrum {
    pub fn energy(&self) -> f64 {
        energy(self)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of nonzero entries (after zero-snapping).
    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    /// Groups sorted values into clusters separated by gaps larger than `gap`;
    /// returns one representative (the cluster mean) per cluster.
    pub fn distinct_values(&self, gap: f64) -> Vec<f64> {
        let mut clusters: Vec<Vec<f64>> = Vec::new();
        for &v in &self.values {
            match clusters.last_mut() {
                Some(c) if (c.last().unwrap() - v).abs() <= gap => c.push(v),
                _ => clusters.push(vec![v]),
            }
        }
        clusters.iter().map(|c| c.iter().sum::<f64>() / c.len() as f64).collect()
    }

    /// Largest absolute difference to another spectrum of the same length.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn symmetric_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>> {
    let echo = format!("{m:.6}");
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 10_000).ok_or(Error::NoConvergence(echo))?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Spectrum of a symmetric or skew-symmetric matrix.
///
/// For a skew matrix `M` the `mu`-values are the eigenvalues of the
/// Hermitian matrix `-iM`, obtained from its real symmetric embedding
/// `[[0, M], [-M, 0]]` of order `2n`, whose eigenvalues are the `mu_j`
/// each repeated twice. Values below `ZERO_SNAP * (1 + |M|_F)` become
/// exactly zero and the result is made symmetric about zero.
pub fn spectrum(m: &RealMatrix) -> Result<Spectrum> {
    let n = m.order();
    let snap = ZERO_SNAP * (1.0 + m.frobenius_norm());
    let clean = |x: f64| if x.abs() < snap { 0.0 } else { x };
    match m.kind {
        MatrixKind::Symmetric => {
            let values = symmetric_eigenvalues(m.entries.clone())?.into_iter().map(clean).collect();
            Ok(Spectrum { values, kind: SpectrumKind::Symmetric })
        }
        MatrixKind::Skew => {
            let mut embed = DMatrix::zeros(2 * n, 2 * n);
            embed.view_mut((0, n), (n, n)).copy_from(&m.entries);
            embed.view_mut((n, 0), (n, n)).copy_from(&(-&m.entries));
            let doubled = symmetric_eigenvalues(embed)?;
            let half = n / 2;
            // each mu appears twice at the top and its negative twice at the bottom
            let top: Vec<f64> = (0..half)
                .map(|j| {
                    let mu = 0.25
                        * (doubled[2 * j] + doubled[2 * j + 1]
                            - doubled[2 * n - 1 - 2 * j]
                            - doubled[2 * n - 2 - 2 * j]);
                    clean(mu.max(0.0))
                })
                .collect();
            let mut values = top.clone();
            if n % 2 == 1 {
                values.push(0.0);
            }
            values.extend(top.iter().rev().map(|x| -x));
            Ok(Spectrum { values, kind: SpectrumKind::SkewImaginaryParts })
        }
    }
}

pub fn energy(s: &Spectrum) -> f64 {
    s.values.iter().map(|v| v.abs()).sum()
}

pub fn randic_spectrum(g: &Graph) -> Result<Spectrum> {
    spectrum(&randic_matrix(g))
}

pub fn skew_randic_spectrum(og: &OrientedGraph) -> Result<Spectrum> {
    spectrum(&skew_randic_matrix(og))
}

/// Randić energy `RE(G)`.
pub fn randic_energy(g: &Graph) -> Result<f64> {
    Ok(randic_spectrum(g)?.energy())
}

/// Skew Randić energy `RE_s(G^sigma)`.
pub fn skew_randic_energy(og: &OrientedGraph) -> Result<f64> {
    Ok(skew_randic_spectrum(og)?.energy())
}

/// `R_{-1}(G) = sum over edges of 1/(d_i d_j)`, exactly.
pub fn randic_index(g: &Graph) -> Rational {
    g.edges().iter().fold(Rational::zero(), |acc, &(u, v)| {
        acc + Rational::new(BigInt::one(), BigInt::from(g.degree(u) * g.degree(v)))
    })
}

/// Value of a general Randić index: exact for integer exponents.
#[derive(Clone, Debug, PartialEq)]
pub enum RandicIndex {
    Exact(Rational),
    Real(f64),
}

impl RandicIndex {
    pub fn to_f64(&self) -> f64 {
        match self {
            RandicIndex::Exact(r) => rational_to_f64(r),
            RandicIndex::Real(x) => *x,
        }
    }
}

/// `R_alpha(G) = sum over edges of (d_i d_j)^alpha` for integer or
/// half-integer `alpha`.
pub fn general_randic_index(g: &Graph, alpha: f64) -> Result<RandicIndex> {
    if (2.0 * alpha).fract() != 0.0 || !alpha.is_finite() {
        return Err(Error::BadExponent(alpha));
    }
    if alpha.fract() == 0.0 {
        let k = alpha as i32;
        let sum = g.edges().iter().fold(Rational::zero(), |acc, &(u, v)| {
            let base = Rational::from_integer(BigInt::from(g.degree(u) * g.degree(v)));
            acc + num_traits::pow::Pow::pow(&base, k)
        });
        return Ok(RandicIndex::Exact(sum));
    }
    let sum = g
        .edges()
        .iter()
        .map(|&(u, v)| ((g.degree(u) * g.degree(v)) as f64).powf(alpha))
        .sum();
    Ok(RandicIndex::Real(sum))
}

/// `p = |det R_s| = prod |mu_j|`; exactly zero for odd `n`.
pub fn abs_determinant(og: &OrientedGraph) -> Result<f64> {
    let s = skew_randic_spectrum(og)?;
    let p: f64 = s.values.iter().map(|v| v.abs()).product();
    if og.n() % 2 == 1 {
        assert_eq!(p, 0.0, "odd order forces a zero eigenvalue");
    }
    Ok(p)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).expect("finite rational")
}
