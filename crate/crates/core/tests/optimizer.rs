mod common;

use common::{random_traceless_hermitian, rng, vertex_enumeration_max};
use qchsh_core::bounds::{chsh_bounds, ghz_bound_value, horodecki_two_qubit, TSIRELSON};
use qchsh_core::correlation::{chsh_expectation_direct, correlation_matrix};
use qchsh_core::numerics::{hermitian_eigendecomposition, trace_inner_product, ComplexMatrix};
use qchsh_core::optimizer::{
    random_search_max, seesaw_maximize, traceless_linear_max, SeesawConfig, SeesawProblem,
    UpdateMode,
};
use qchsh_core::representation::{build_gellmann_basis, rd_membership};
use qchsh_core::states::{ghz_state, random_two_qudit_state, validate_state};

#[test]
fn lp_matches_vertex_enumeration() {
    for d in 2..=4 {
        let mut r = rng(400 + d as u64);
        for _ in 0..1000 {
            let c = random_traceless_hermitian(d, &mut r);
            let (x, value) = traceless_linear_max(&c).unwrap();
            let eig = hermitian_eigendecomposition(&c).unwrap();
            let oracle = vertex_enumeration_max(&eig.values);
            assert!((value - oracle).abs() < 1e-12, "d={d}: {value} vs {oracle}");
            assert!(
                (trace_inner_product(&x, &c).unwrap().re - value).abs() < 1e-12 * value.max(1.0)
            );
            assert!(x.trace().norm() < 1e-12);
            let xe = hermitian_eigendecomposition(&x).unwrap();
            assert!(xe.max_abs_eigenvalue() <= 1.0 + 1e-10);
        }
    }
}

#[test]
fn seesaw_reaches_ghz_values() {
    for (d, restarts) in [(2, 8), (3, 32)] {
        let basis = build_gellmann_basis(d).unwrap();
        let config = SeesawConfig {
            restarts,
            seed: 1,
            ..Default::default()
        };
        let res = seesaw_maximize(&ghz_state(d).unwrap(), &basis, config).unwrap();
        let want = ghz_bound_value(d).unwrap();
        assert!((res.value - want).abs() < 1e-6, "d={d}: {}", res.value);
    }
}

#[test]
fn seesaw_on_maximally_mixed_is_zero() {
    let basis = build_gellmann_basis(3).unwrap();
    let rho = validate_state(&ComplexMatrix::identity(9).scale(1.0 / 9.0), 3).unwrap();
    let res = seesaw_maximize(
        &rho,
        &basis,
        SeesawConfig {
            restarts: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(res.value.abs() < 1e-9);
}

#[test]
fn exact_mode_is_monotone_and_feasible() {
    for d in 2..=4 {
        let basis = build_gellmann_basis(d).unwrap();
        for seed in 0..5 {
            let rho = random_two_qudit_state(d, seed).unwrap();
            let config = SeesawConfig {
                restarts: 6,
                seed,
                ..Default::default()
            };
            let problem = SeesawProblem::new(&rho, &basis, config).unwrap();
            for i in 0..config.restarts {
                let out = problem.run_restart(i).unwrap();
                assert!(
                    out.monotone,
                    "d={d} seed={seed} restart={i}: {:?}",
                    out.trace
                );
                for v in &out.vectors {
                    assert!(rd_membership(v, &basis).unwrap());
                }
            }
            let res = seesaw_maximize(&rho, &basis, config).unwrap();
            assert!(res.settings.observables().iter().all(|o| o.in_ld()));
            let direct = chsh_expectation_direct(&rho, &res.settings).unwrap();
            assert!((direct - res.value).abs() < 1e-9);
        }
    }
}

#[test]
fn qubit_maximum_matches_horodecki() {
    let basis = build_gellmann_basis(2).unwrap();
    for seed in 0..40 {
        let rho = random_two_qudit_state(2, seed).unwrap();
        let t = correlation_matrix(&rho, &basis).unwrap();
        let exact = horodecki_two_qubit(&t).unwrap();
        let res = seesaw_maximize(
            &rho,
            &basis,
            SeesawConfig {
                restarts: 8,
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(
            (res.value - exact).abs() < 1e-6,
            "seed={seed}: {} vs {exact}",
            res.value
        );
    }
}

#[test]
fn bound_sandwich_on_random_qudits() {
    for d in 3..=4 {
        let basis = build_gellmann_basis(d).unwrap();
        for seed in 0..10 {
            let rho = random_two_qudit_state(d, seed).unwrap();
            let bounds = chsh_bounds(&correlation_matrix(&rho, &basis).unwrap()).unwrap();
            let config = SeesawConfig {
                restarts: 8,
                seed,
                ..Default::default()
            };
            let res = seesaw_maximize(&rho, &basis, config).unwrap();
            let search = random_search_max(&rho, &basis, 2000, seed).unwrap();
            assert!(search <= res.value + 1e-9);
            assert!(res.value <= bounds.upper + 1e-8);
            assert!(bounds.upper <= TSIRELSON + 1e-8);
        }
    }
}

#[test]
fn paper_mode_stays_feasible_and_below_exact() {
    for d in 2..=4 {
        let basis = build_gellmann_basis(d).unwrap();
        for seed in 0..4 {
            let rho = random_two_qudit_state(d, seed).unwrap();
            let paper = seesaw_maximize(
                &rho,
                &basis,
                SeesawConfig {
                    mode: UpdateMode::Paper,
                    restarts: 6,
                    seed,
                    ..Default::default()
                },
            )
            .unwrap();
            let bounds = chsh_bounds(&correlation_matrix(&rho, &basis).unwrap()).unwrap();
            assert!(paper.value <= bounds.upper + 1e-8);
            for v in [&paper.a1, &paper.a2, &paper.b1, &paper.b2] {
                assert!(rd_membership(v, &basis).unwrap());
            }
            let direct = chsh_expectation_direct(&rho, &paper.settings).unwrap();
            assert!((direct - paper.value).abs() < 1e-9);
        }
    }
}

#[test]
fn paper_mode_on_ghz_qubit() {
    let basis = build_gellmann_basis(2).unwrap();
    let res = seesaw_maximize(
        &ghz_state(2).unwrap(),
        &basis,
        SeesawConfig {
            mode: UpdateMode::Paper,
            restarts: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert!((res.value - TSIRELSON).abs() < 1e-8);
}

#[test]
fn seesaw_is_deterministic() {
    let basis = build_gellmann_basis(3).unwrap();
    let rho = random_two_qudit_state(3, 7).unwrap();
    let config = SeesawConfig {
        restarts: 5,
        seed: 3,
        ..Default::default()
    };
    let a = seesaw_maximize(&rho, &basis, config).unwrap();
    let b = seesaw_maximize(&rho, &basis, config).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.a1, b.a1);
    assert_eq!(a.iterations_per_restart, b.iterations_per_restart);
}
