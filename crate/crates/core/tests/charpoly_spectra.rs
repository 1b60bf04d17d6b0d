mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use skew_randic::charpoly::{randic_coeffs, skew_randic_coeffs, MAX_CHARPOLY_ORDER};
use skew_randic::spectra::{
    randic_index, randic_matrix, randic_spectrum, rational_to_f64, skew_adjacency_matrix,
    skew_randic_matrix, skew_randic_spectrum,
};
use skew_randic::{Graph, OrientedGraph, Rational};

/// Integer determinant by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `sum over |U| = i of det(M[U]) / prod_{v in U} d_v` for an integer
/// matrix `M`, i.e. the principal-minor sums of `D^{-1/2} M D^{-1/2}`.
fn scaled_minor_sums(g: &Graph, entry: impl Fn(usize, usize) -> i64) -> Vec<Rational> {
    let n = g.n();
    let mut sums = vec![Rational::from_integer(BigInt::from(0)); n + 1];
    for subset in 0u32..1 << n {
        let verts: Vec<usize> = (0..n).filter(|v| subset >> v & 1 == 1).collect();
        if verts.iter().any(|&v| g.degree(v) == 0) {
            continue;
        }
        let m: Vec<Vec<i64>> = verts.iter().map(|&r| verts.iter().map(|&c| entry(r, c)).collect()).collect();
        let denom: i64 = verts.iter().map(|&v| g.degree(v) as i64).product();
        sums[verts.len()] += Rational::new(BigInt::from(bareiss(m)), BigInt::from(denom));
    }
    sums
}

fn minor_oracle_randic(g: &Graph) -> Vec<Rational> {
    let sums = scaled_minor_sums(g, |r, c| i64::from(g.adjacent(r, c)));
    sums.into_iter().enumerate().map(|(i, s)| if i % 2 == 0 { s } else { -s }).collect()
}

fn minor_oracle_skew(og: &OrientedGraph) -> Vec<Rational> {
    // odd principal minors of a skew matrix vanish, so no signs remain
    scaled_minor_sums(og.base(), |r, c| i64::from(og.arc_sign(r, c)))
}

#[test]
fn spec_polynomials() {
    let c = skew_randic_coeffs(&OrientedGraph::directed_cycle(3)).unwrap();
    assert_eq!(c.coeffs, minor_oracle_skew(&OrientedGraph::directed_cycle(3)));
    let a = randic_coeffs(&Graph::complete(3)).unwrap();
    assert_eq!(a.coeffs[3], Rational::new(BigInt::from(-1), BigInt::from(4)));
    assert!(randic_coeffs(&Graph::complete(MAX_CHARPOLY_ORDER + 1)).is_err());
}

#[test]
fn skew_spectrum_matches_complex_eigenvalues_and_singular_values() {
    let og = OrientedGraph::from_mask(Graph::complete(6), 0b101100111010110);
    let mu = skew_randic_spectrum(&og).unwrap();
    let m = skew_randic_matrix(&og).entries().clone();
    let mut imag: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.im).collect();
    imag.sort_by(|a, b| b.total_cmp(a));
    for (a, b) in mu.values.iter().zip(&imag) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let mut moduli: Vec<f64> = mu.values.iter().map(|x| x.abs()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    for (a, b) in sv.iter().zip(&moduli) {
        assert!((a - b).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficients_equal_principal_minor_sums(og in common::oriented(1, 8)) {
        prop_assert_eq!(randic_coeffs(og.base()).unwrap().coeffs, minor_oracle_randic(og.base()));
        prop_assert_eq!(skew_randic_coeffs(&og).unwrap().coeffs, minor_oracle_skew(&og));
    }

    #[test]
    fn skew_spectrum_comes_in_opposite_pairs(og in common::oriented(1, 10)) {
        let s = skew_randic_spectrum(&og).unwrap();
        let n = s.len();
        for j in 0..n {
            prop_assert!((s.values[j] + s.values[n - 1 - j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn energy_is_the_nuclear_norm(og in common::oriented(1, 10)) {
        let s = skew_randic_spectrum(&og).unwrap();
        let nuclear: f64 = skew_randic_matrix(&og).entries().singular_values().iter().sum();
        prop_assert!((s.energy() - nuclear).abs() <= 1e-8);
    }

    #[test]
    fn trace_identity(og in common::oriented(1, 10)) {
        let target = 2.0 * rational_to_f64(&randic_index(og.base()));
        let sq: f64 = skew_randic_spectrum(&og).unwrap().values.iter().map(|x| x * x).sum();
        prop_assert!((sq - target).abs() <= 1e-8);
        let exact = skew_randic_matrix(&og).exact_frobenius_sq();
        if let Some(f) = exact {
            prop_assert_eq!(f, randic_index(og.base()) * Rational::from_integer(BigInt::from(2)));
        }
    }

    #[test]
    fn randic_spectrum_lies_in_unit_interval(g in common::graph(1, 10)) {
        let s = randic_spectrum(&g).unwrap();
        prop_assert!(s.values.iter().all(|x| x.abs() <= 1.0 + 1e-12));
        if g.m() > 0 {
            prop_assert!((s.values[0] - 1.0).abs() <= 1e-9);
        }
        prop_assert_eq!(randic_matrix(&g).entries().clone(), randic_matrix(&g).entries().transpose());
    }

    #[test]
    fn skew_adjacency_is_antisymmetric(og in common::oriented(1, 10)) {
        let s = skew_adjacency_matrix(&og);
        prop_assert_eq!(s.clone(), -s.transpose());
    }
}
