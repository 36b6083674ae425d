mod common;

use common::{random_hermitian, random_matrix, rng};
use proptest::prelude::*;
use qchsh_core::numerics::{
    hermitian_eigendecomposition, operator_norm, tensor_product, trace_inner_product, ComplexMatrix,
};
use qchsh_core::Complex64;

#[test]
fn eigendecomposition_reconstructs_random_hermitian() {
    let mut r = rng(20);
    for trial in 0..1000 {
        let n = 1 + trial % 10;
        let m = random_hermitian(n, &mut r);
        let e = hermitian_eigendecomposition(&m).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let err = (&e.reconstruct() - &m).max_abs();
        assert!(err < 1e-9 * m.max_abs(), "n={n}: {err}");
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!((&gram - &ComplexMatrix::identity(n)).max_abs() < 1e-10);
    }
}

#[test]
fn eigenvalues_match_trace_and_frobenius() {
    let mut r = rng(21);
    for n in [2, 5, 9, 16, 32] {
        let m = random_hermitian(n, &mut r);
        let e = hermitian_eigendecomposition(&m).unwrap();
        let sum: f64 = e.values.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-9);
        let sq: f64 = e.values.iter().map(|v| v * v).sum();
        let frob: f64 = m.as_slice().iter().map(|z| z.norm_sqr()).sum();
        assert!((sq - frob).abs() < 1e-8 * frob);
    }
}

#[test]
fn operator_norm_is_max_expectation() {
    // sup over unit psi of |<psi, M psi>| is attained at an eigenvector
    let mut r = rng(22);
    for n in 2..=6 {
        let m = random_hermitian(n, &mut r);
        let norm = operator_norm(&m).unwrap();
        let e = hermitian_eigendecomposition(&m).unwrap();
        for k in 0..n {
            let psi: Vec<Complex64> = (0..n).map(|i| e.vectors[(i, k)]).collect();
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    q += psi[i].conj() * m[(i, j)] * psi[j];
                }
            }
            assert!(q.norm() <= norm + 1e-10);
        }
        for _ in 0..200 {
            let psi = common::random_unit_state(n, &mut r);
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    q += psi[i].conj() * m[(i, j)] * psi[j];
                }
            }
            assert!(q.norm() <= norm + 1e-10);
        }
    }
}

proptest! {
    #[test]
    fn operator_norm_scales(seed in any::<u64>(), c in -10.0f64..10.0, n in 2usize..6) {
        let m = random_hermitian(n, &mut rng(seed));
        let lhs = operator_norm(&m.scale(c)).unwrap();
        let rhs = c.abs() * operator_norm(&m).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn kronecker_mixed_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c, d) = (
            random_matrix(3, &mut r),
            random_matrix(3, &mut r),
            random_matrix(3, &mut r),
            random_matrix(3, &mut r),
        );
        let lhs = &tensor_product(&a, &b).unwrap() * &tensor_product(&c, &d).unwrap();
        let rhs = tensor_product(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn hilbert_schmidt_symmetry(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let (a, b) = (random_hermitian(n, &mut r), random_hermitian(n, &mut r));
        let ab = trace_inner_product(&a, &b).unwrap();
        let ba = trace_inner_product(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12 * ab.norm().max(1.0));
        prop_assert!(ab.im.abs() < 1e-12 * ab.norm().max(1.0));
    }
}
