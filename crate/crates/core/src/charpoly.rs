//! Characteristic polynomials of `R(G)` and `R_s(G^sigma)`.
//!
//! Coefficients are computed exactly from linear subgraphs:
//!
//! * `a_i = sum over L in L_i of (-1)^{p1(L)} (-2)^{p2(L)} W(L)`
//! * `c_i = sum over L in EL_i of (-2)^{p_e(L)} 2^{p_o(L)} W(L)`
//!
//! with `W(L) = prod over v in L of 1/d(v)`. Every `W(L)` divides into
//! `D = prod of the positive degrees`, so coefficients are accumulated as
//! integer numerators over the common denominator `D`.
//!
//! A numeric oracle working from eigenvalues provides an independent check.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use serde::Serialize;

use crate::graph::{enumerate_all_linear_subgraphs, Graph, OrientedGraph};
use crate::spectra::{rational_to_f64, symmetric_eigenvalues, MatrixKind, RealMatrix};
use crate::{Error, Rational, Result};

/// Largest order accepted by the combinatorial and numeric routes.
pub const MAX_CHARPOLY_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoeffKind {
    RandicA,
    SkewRandicC,
}

/// `coeffs[i]` is the coefficient of `lambda^{n-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCoeffs {
    pub coeffs: Vec<Rational>,
    pub kind: CoeffKind,
}

impl PolyCoeffs {
    fn from_numerators(numerators: &[i128], denominator: i128, kind: CoeffKind) -> Self {
        let d = BigInt::from(denominator);
        let coeffs = numerators
            .iter()
            .map(|&x| Rational::new(BigInt::from(x), d.clone()))
            .collect();
        PolyCoeffs { coeffs, kind }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

#[derive(Clone, Debug)]
struct PlanCycle {
    /// `(edge index, arc agrees with routing when the edge is not reversed)`
    steps: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
struct CyclicTerm {
    order: usize,
    /// `2^{p2} * D * W(L)`
    weight: i128,
    cycles: Vec<usize>,
}

/// Orientation-independent part of the coefficient computation for one graph.
///
/// Enumerating linear subgraphs dominates the cost; the plan does it once
/// so that sweeping over orientations only re-classifies cycles.
#[derive(Clone, Debug)]
pub struct CoefficientPlan {
    n: usize,
    m: usize,
    denominator: i128,
    randic: Vec<i128>,
    acyclic_part: Vec<i128>,
    cycles: Vec<PlanCycle>,
    cyclic_terms: Vec<CyclicTerm>,
}

impl CoefficientPlan {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > MAX_CHARPOLY_ORDER {
            return Err(Error::InstanceTooLarge(format!(
                "characteristic polynomial needs n <= {MAX_CHARPOLY_ORDER}, got {n}"
            )));
        }
        let degree = |v: usize| g.degree(v) as i128;
        let denominator: i128 = (0..n).map(degree).filter(|&d| d > 0).product();
        let mut randic = vec![0i128; n + 1];
        let mut acyclic_part = vec![0i128; n + 1];
        let mut cycles: Vec<PlanCycle> = Vec::new();
        let mut cycle_ids = std::collections::HashMap::new();
        let mut cyclic_terms = Vec::new();

        for l in enumerate_all_linear_subgraphs(g) {
            let inside = l.vertex_mask();
            let numerator: i128 = (0..n)
                .filter(|&v| inside & (1 << v) == 0 && g.degree(v) > 0)
                .map(degree)
                .product();
            let i = l.order();
            let scaled = numerator << l.p2();
            randic[i] += if (l.p1() + l.p2()) % 2 == 0 { scaled } else { -scaled };
            if !l.is_evenly_linear() {
                continue;
            }
            if l.p2() == 0 {
                acyclic_part[i] += numerator;
                continue;
            }
            let ids = l
                .cycle_components
                .iter()
                .map(|c| {
                    *cycle_ids.entry(c.clone()).or_insert_with(|| {
                        let steps = c
                            .steps()
                            .map(|(a, b)| (g.edge_index(a, b).expect("cycle edge"), a < b))
                            .collect();
                        cycles.push(PlanCycle { steps });
                        cycles.len() - 1
                    })
                })
                .collect();
            cyclic_terms.push(CyclicTerm { order: i, weight: scaled, cycles: ids });
        }
        Ok(CoefficientPlan { n, m: g.m(), denominator, randic, acyclic_part, cycles, cyclic_terms })
    }

    /// `D`, the product of all positive degrees.
    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    /// `D * a_i` for `i = 0..=n`.
    pub fn randic_numerators(&self) -> &[i128] {
        &self.randic
    }

    /// `D * c_i` for the orientation given by per-edge reversal flags.
    pub fn skew_numerators(&self, reversed: &[bool]) -> Vec<i128> {
        assert_eq!(reversed.len(), self.m, "one direction per edge");
        let evenly: Vec<bool> = self
            .cycles
            .iter()
            .map(|c| {
                let forward = c.steps.iter().filter(|&&(e, fwd)| fwd != reversed[e]).count();
                forward % 2 == 0
            })
            .collect();
        let mut out = self.acyclic_part.clone();
        for t in &self.cyclic_terms {
            let p_e = t.cycles.iter().filter(|&&c| evenly[c]).count();
            out[t.order] += if p_e % 2 == 0 { t.weight } else { -t.weight };
        }
        out
    }

    pub fn randic(&self) -> PolyCoeffs {
        PolyCoeffs::from_numerators(&self.randic, self.denominator, CoeffKind::RandicA)
    }

    pub fn skew(&self, reversed: &[bool]) -> PolyCoeffs {
        PolyCoeffs::from_numerators(&self.skew_numerators(reversed), self.denominator, CoeffKind::SkewRandicC)
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// Exact coefficients `a_0..a_n` of `det(lambda I - R(G))`.
pub fn randic_coeffs(g: &Graph) -> Result<PolyCoeffs> {
    Ok(CoefficientPlan::new(g)?.randic())
}

/// Exact coefficients `c_0..c_n` of `det(lambda I - R_s(G^sigma))`.
pub fn skew_randic_coeffs(og: &OrientedGraph) -> Result<PolyCoeffs> {
    Ok(CoefficientPlan::new(og.base())?.skew(og.reversed()))
}

fn multiply_linear(c: &mut Vec<f64>, root: f64) {
    c.push(0.0);
    for i in (1..c.len()).rev() {
        c[i] -= root * c[i - 1];
    }
}

fn multiply_quadratic(c: &mut Vec<f64>, s: f64) {
    // times (lambda^2 + s)
    c.push(0.0);
    c.push(0.0);
    for i in (2..c.len()).rev() {
        c[i] += s * c[i - 2];
    }
}

/// Monic characteristic polynomial of `m` from its eigenvalues.
///
/// Symmetric matrices multiply out `(lambda - lambda_j)`. Skew matrices use
/// the eigenvalues of `m^T m`, which are `mu_j^2` in pairs, and multiply out
/// `(lambda^2 + mu_j^2)`.
pub fn charpoly_numeric_oracle(m: &RealMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    if n > MAX_CHARPOLY_ORDER {
        return Err(Error::InstanceTooLarge(format!("numeric oracle needs n <= {MAX_CHARPOLY_ORDER}")));
    }
    let mut c = vec![1.0];
    match m.kind() {
        MatrixKind::Symmetric => {
            for root in symmetric_eigenvalues(m.entries().clone())? {
                multiply_linear(&mut c, root);
            }
        }
        MatrixKind::Skew => {
            let gram: DMatrix<f64> = m.entries().transpose() * m.entries();
            let squares = symmetric_eigenvalues(gram)?;
            for j in 0..n / 2 {
                let s = 0.5 * (squares[2 * j] + squares[2 * j + 1]);
                multiply_quadratic(&mut c, s.max(0.0));
            }
            if n % 2 == 1 {
                c.push(0.0);
            }
        }
    }
    Ok(c)
}

/// Largest `|exact_i - numeric_i|`.
pub fn max_coefficient_gap(exact: &PolyCoeffs, numeric: &[f64]) -> f64 {
    assert_eq!(exact.coeffs.len(), numeric.len());
    exact
        .to_f64()
        .iter()
        .zip(numeric)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
