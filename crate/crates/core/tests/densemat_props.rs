mod common;

use blockineq::{ComplexMatrix, C64};
use common::*;
use proptest::prelude::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lu_determinant_matches_cofactor_expansion(a in square(5)) {
        let lu = a.determinant().unwrap();
        prop_assert!(rel(lu, det_cofactor(&a)) < 1e-10, "{lu} vs {}", det_cofactor(&a));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        let ab = a.matmul(&b).unwrap().determinant().unwrap();
        let prod = a.determinant().unwrap() * b.determinant().unwrap();
        prop_assert!(rel(ab, prod) < 1e-9);
    }

    #[test]
    fn kron_matches_index_formula(x in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| matrix(r, c)),
                                  y in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(x.kron(&y), kron_naive(&x, &y));
    }

    #[test]
    fn kron_is_associative(x in matrix(2, 2), y in matrix(2, 1), z in matrix(1, 3)) {
        let left = x.kron(&y).kron(&z);
        let right = x.kron(&y.kron(&z));
        prop_assert!(close(&left, &right, 1e-14));
    }

    #[test]
    fn mixed_product_property(a in matrix(2, 2), b in matrix(2, 2), c in matrix(3, 3), d in matrix(3, 3)) {
        let left = a.kron(&c).matmul(&b.kron(&d)).unwrap();
        let right = a.matmul(&b).unwrap().kron(&c.matmul(&d).unwrap());
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn trace_is_cyclic((x, y) in (1usize..=4, 1usize..=4).prop_flat_map(|(p, q)| (matrix(p, q), matrix(q, p)))) {
        let xy = x.matmul(&y).unwrap().trace().unwrap();
        let yx = y.matmul(&x).unwrap().trace().unwrap();
        prop_assert!(rel(xy, yx) < 1e-12);
    }

    #[test]
    fn eigenvalues_preserve_trace_and_frobenius(h in hermitian(6)) {
        let eig = h.hermitian_eigenvalues().unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = eig.values.iter().sum();
        let tr = h.trace().unwrap().re;
        prop_assert!((sum - tr).abs() <= 1e-9 * tr.abs().max(1.0));
        let sq: f64 = eig.values.iter().map(|v| v * v).sum();
        let fro2 = h.frobenius().powi(2);
        prop_assert!((sq - fro2).abs() <= 1e-10 * fro2.max(1.0));
        prop_assert!(eig.offdiag_residual < 1e-13 * h.frobenius().max(1.0));
    }

    #[test]
    fn determinant_is_product_of_eigenvalues(h in hermitian(5)) {
        let prod: f64 = h.hermitian_eigenvalues().unwrap().values.iter().product();
        let det = h.determinant().unwrap();
        prop_assert!(det.im.abs() <= 1e-9 * det.norm().max(1.0));
        prop_assert!((prod - det.re).abs() <= 1e-9 * prod.abs().max(det.norm()).max(1.0));
    }

    #[test]
    fn eigenvalues_are_roots_of_characteristic_polynomial(h in hermitian(3).prop_filter("3x3", |h| h.rows() == 3)) {
        // λ³ - c2 λ² + c1 λ - c0 with c2 = tr, c1 = sum of principal 2x2 minors, c0 = det
        let c2 = h.trace().unwrap().re;
        let minor = |i: usize, j: usize| (h[(i, i)] * h[(j, j)] - h[(i, j)] * h[(j, i)]).re;
        let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
        let c0 = det_cofactor(&h).re;
        let scale = h.frobenius().max(1.0);
        for &l in &h.hermitian_eigenvalues().unwrap().values {
            let p = l * l * l - c2 * l * l + c1 * l - c0;
            prop_assert!(p.abs() <= 1e-9 * scale.powi(3), "p({l}) = {p}");
        }
    }

    #[test]
    fn unitary_similarity_preserves_spectrum(h in hermitian(4), g in square(4)) {
        prop_assume!(g.rows() == h.rows());
        // Cayley transform of a skew-Hermitian matrix is unitary
        let k = &g - &g.conj_transpose();
        let n = h.rows();
        let i = ComplexMatrix::identity(n);
        let inv_plus = inverse(&(&i + &k));
        let u = (&i - &k).matmul(&inv_plus).unwrap();
        let t = u.matmul(&h).unwrap().matmul(&u.conj_transpose()).unwrap();
        let a = h.hermitian_eigenvalues().unwrap().values;
        let b = t.hermitian_part().hermitian_eigenvalues().unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-8 * h.frobenius().max(1.0));
        }
    }

    #[test]
    fn psd_verdict_is_scale_invariant(g in square(4), c in prop::sample::select(vec![1e-3, 1.0, 1e3])) {
        let p = g.conj_transpose().matmul(&g).unwrap();
        prop_assert!(p.is_psd(1e-9).unwrap().0);
        prop_assert!(p.scale_real(c).is_psd(1e-9).unwrap().0);
        let neg = p.scale_real(-c);
        let largest = p.hermitian_eigenvalues().unwrap().max().unwrap();
        if largest * c > 1e-6 * p.frobenius().max(1.0) {
            prop_assert!(!neg.is_psd(1e-9).unwrap().0);
        }
    }
}

/// Gauss-Jordan inverse, for building unitaries in the tests above.
fn inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let p = (col..n)
            .max_by(|&x, &y| m[(x, col)].norm().total_cmp(&m[(y, col)].norm()))
            .unwrap();
        for j in 0..n {
            let (t, u) = (m[(col, j)], inv[(col, j)]);
            m[(col, j)] = m[(p, j)];
            inv[(col, j)] = inv[(p, j)];
            m[(p, j)] = t;
            inv[(p, j)] = u;
        }
        let d = m[(col, col)];
        for j in 0..n {
            m[(col, j)] /= d;
            inv[(col, j)] /= d;
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = m[(r, col)];
            for j in 0..n {
                let (mc, ic) = (m[(col, j)], inv[(col, j)]);
                m[(r, j)] -= f * mc;
                inv[(r, j)] -= f * ic;
            }
        }
    }
    inv
}

#[test]
fn empty_matrix_conventions() {
    let e = ComplexMatrix::zeros(0, 0);
    assert_eq!(e.determinant().unwrap(), C64::new(1.0, 0.0));
    assert_eq!(det_cofactor(&e), C64::new(1.0, 0.0));
    assert!(e.hermitian_eigenvalues().unwrap().values.is_empty());
}

#[test]
fn non_hermitian_input_is_a_domain_error() {
    let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
    assert!(matches!(
        a.hermitian_eigenvalues(),
        Err(blockineq::Error::Domain(_))
    ));
}
