mod common;

use common::{gaussian_vector, random_traceless_hermitian, random_unit_state, rng};
use qchsh_core::numerics::trace_inner_product;
use qchsh_core::representation::{
    build_gellmann_basis, expand_observable, max_vector_norm_ld, observable_from_coefficients,
    project_into_rd, pure_state_vector, rd_membership, GeneratorKind,
};

#[test]
fn orthogonality_up_to_ten() {
    for d in 2..=10 {
        let b = build_gellmann_basis(d).unwrap();
        let mut worst = 0.0f64;
        for i in 0..b.len() {
            assert!(b.operator(i).trace().norm() < 1e-12);
            assert!(b.operator(i).hermitian_residual() == 0.0);
            for j in 0..b.len() {
                let want = if i == j { 2.0 } else { 0.0 };
                let t = trace_inner_product(b.operator(i), b.operator(j)).unwrap();
                worst = worst.max((t.re - want).abs()).max(t.im.abs());
            }
        }
        assert!(worst < 1e-12, "d={d}: {worst}");
    }
}

#[test]
fn block_counts_and_order() {
    for d in 2..=7 {
        let b = build_gellmann_basis(d).unwrap();
        let pairs = d * (d - 1) / 2;
        assert_eq!(b.len(), d * d - 1);
        let kinds: Vec<_> = (0..b.len()).map(|j| b.kind(j)).collect();
        assert!(kinds[..pairs]
            .iter()
            .all(|k| matches!(k, GeneratorKind::Symmetric { .. })));
        assert!(kinds[pairs..2 * pairs]
            .iter()
            .all(|k| matches!(k, GeneratorKind::Antisymmetric { .. })));
        assert!(kinds[2 * pairs..]
            .iter()
            .all(|k| matches!(k, GeneratorKind::Diagonal { .. })));
        assert_eq!(kinds[0], GeneratorKind::Symmetric { m: 1, k: 2 });
        assert_eq!(
            kinds[pairs - 1],
            GeneratorKind::Symmetric { m: d - 1, k: d }
        );
        assert_eq!(kinds[b.len() - 1], GeneratorKind::Diagonal { l: d - 1 });
    }
}

#[test]
fn lemma_one_sandwich() {
    let mut r = rng(100);
    for d in 2..=6 {
        let b = build_gellmann_basis(d).unwrap();
        let lo = (2.0 / d as f64).sqrt();
        let hi = (2.0 * (d - 1) as f64 / d as f64).sqrt();
        for _ in 0..10_000 {
            let n = gaussian_vector(&b, &mut r);
            let ratio = b.operator_norm_of(n.as_slice()).unwrap() / n.norm();
            assert!(
                ratio - lo >= -1e-10 && hi - ratio >= -1e-10,
                "d={d}: {ratio}"
            );
            if d == 2 {
                assert!((ratio - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn coefficient_roundtrips() {
    let mut r = rng(101);
    for d in 2..=6 {
        let b = build_gellmann_basis(d).unwrap();
        for _ in 0..200 {
            let n = gaussian_vector(&b, &mut r);
            let x = observable_from_coefficients(&n, &b).unwrap();
            let back = expand_observable(x.matrix(), &b).unwrap();
            let err = (&back - &n)
                .as_slice()
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(err < 1e-10);

            let m = random_traceless_hermitian(d, &mut r);
            let coeffs = expand_observable(&m, &b).unwrap();
            let rebuilt = observable_from_coefficients(&coeffs, &b).unwrap();
            assert!((rebuilt.matrix() - &m).max_abs() < 1e-10);

            // tr[X^2] = d |n|^2
            let tr2 = trace_inner_product(&m, &m).unwrap().re;
            assert!((tr2 - d as f64 * coeffs.dot(&coeffs)).abs() < 1e-10 * tr2.max(1.0));
        }
    }
}

#[test]
fn projected_vectors_respect_ld() {
    let mut r = rng(102);
    for d in 2..=6 {
        let b = build_gellmann_basis(d).unwrap();
        let ld = max_vector_norm_ld(d).unwrap();
        for _ in 0..10_000 {
            let n = project_into_rd(&gaussian_vector(&b, &mut r), &b).unwrap();
            assert!(n.norm() <= ld + 1e-9, "d={d}: {}", n.norm());
            assert!((b.operator_norm_of(n.as_slice()).unwrap() - b.rd_radius()).abs() < 1e-10);
        }
    }
}

#[test]
fn inscribed_ball_is_inside() {
    let mut r = rng(103);
    for d in 2..=6 {
        let b = build_gellmann_basis(d).unwrap();
        let radius = 1.0 / ((d - 1) as f64).sqrt();
        for _ in 0..500 {
            let n = gaussian_vector(&b, &mut r);
            let n = n.scale(radius / n.norm());
            assert!(rd_membership(&n, &b).unwrap());
        }
    }
}

#[test]
fn pure_state_vectors_have_unit_norm() {
    let mut r = rng(104);
    for trial in 0..1000 {
        let d = 2 + trial % 6;
        let b = build_gellmann_basis(d).unwrap();
        let psi = random_unit_state(d, &mut r);
        let v = pure_state_vector(&psi, &b).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-10, "d={d}: {}", v.norm());
    }
}
