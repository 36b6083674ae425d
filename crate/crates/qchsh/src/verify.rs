//! Self-verification suites run by `qchsh verify`.

use std::fmt;

use qchsh_core::bounds::{chsh_bounds, ghz_bound_value, ghz_correlation_closed_form};
use qchsh_core::correlation::correlation_matrix;
use qchsh_core::numerics::{trace_inner_product, ComplexMatrix};
use qchsh_core::optimizer::{random_rd_vector, restart_rng};
use qchsh_core::rand_core::RngCore;
use qchsh_core::representation::{
    build_gellmann_basis, expand_observable, observable_from_coefficients, GellMannBasis,
};
use qchsh_core::states::{ghz_state, random_two_qudit_state};
use qchsh_core::{ChaCha8Rng, Complex64};

use crate::error::{CliError, Result};

pub const SUITES: [&str; 6] = [
    "orthogonality",
    "lemma1",
    "roundtrip",
    "correlation-bound",
    "ghz-closed-form",
    "bound-ordering",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suites: Vec<String>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Damage the first generator before running; the suites must notice.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            dims: (2..=6).collect(),
            trials: 1000,
            seed: 0,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{:<18} {status:<6} {}/{} checks passed",
            self.name,
            self.checks - self.failures,
            self.checks
        )?;
        if let Some(msg) = &self.first_failure {
            write!(f, " (first failure: {msg})")?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg());
            }
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            checks: self.checks,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn basis_for(d: usize, opts: &VerifyOptions) -> Result<GellMannBasis> {
    let mut basis = build_gellmann_basis(d)?;
    if opts.inject_fault {
        let damaged = basis.operator(0).scale(1.5);
        basis.replace_operator(0, damaged);
    }
    Ok(basis)
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

fn random_traceless(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(uniform(rng), uniform(rng)))
        .symmetrized();
    let shift = m.trace().re / d as f64;
    &m - &ComplexMatrix::identity(d).scale(shift)
}

fn orthogonality(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("orthogonality");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let want = if i == j { 2.0 } else { 0.0 };
                let got = trace_inner_product(basis.operator(i), basis.operator(j))?;
                let err = (got - Complex64::new(want, 0.0)).norm();
                t.check(err < 1e-12, || {
                    format!("d={d}: tr[L{i} L{j}] off by {err:e}")
                });
            }
        }
    }
    Ok(t.finish())
}

fn lemma1(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("lemma1");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        let reference = build_gellmann_basis(d)?;
        let mut rng = restart_rng(opts.seed, d as u64);
        let lo = (2.0 / d as f64).sqrt();
        let hi = (2.0 * (d - 1) as f64 / d as f64).sqrt();
        for _ in 0..opts.trials {
            // Gaussian direction; the ratio is scale invariant
            let n = random_rd_vector(&reference, &mut rng);
            let ratio = basis.operator_norm_of(n.as_slice())? / n.norm();
            let ok = ratio - lo >= -1e-10
                && hi - ratio >= -1e-10
                && (d != 2 || (ratio - 1.0).abs() < 1e-12);
            t.check(ok, || format!("d={d}: ratio {ratio} outside [{lo}, {hi}]"));
        }
    }
    Ok(t.finish())
}

fn roundtrip(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("roundtrip");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        let mut rng = restart_rng(opts.seed, 100 + d as u64);
        for _ in 0..opts.trials {
            let n = random_rd_vector(&basis, &mut rng);
            let back =
                expand_observable(observable_from_coefficients(&n, &basis)?.matrix(), &basis)?;
            let err = (&back - &n)
                .as_slice()
                .iter()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            t.check(err < 1e-10, || {
                format!("d={d}: coefficient round trip off by {err:e}")
            });

            let x = random_traceless(d, &mut rng);
            let coeffs = expand_observable(&x, &basis)?;
            let rebuilt = observable_from_coefficients(&coeffs, &basis)?;
            let err = (rebuilt.matrix() - &x).max_abs();
            t.check(err < 1e-10, || {
                format!("d={d}: matrix round trip off by {err:e}")
            });

            let tr2 = trace_inner_product(&x, &x)?.re;
            let err = (tr2 - d as f64 * coeffs.dot(&coeffs)).abs();
            t.check(err < 1e-10 * tr2.max(1.0), || {
                format!("d={d}: tr[X^2] identity off by {err:e}")
            });
        }
    }
    Ok(t.finish())
}

fn correlation_bound(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("correlation-bound");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        let mut rng = restart_rng(opts.seed, 200 + d as u64);
        let cap = 2.0 / d as f64 + 1e-9;
        let states = opts.trials.div_ceil(10).max(1);
        for s in 0..states {
            let rho = random_two_qudit_state(d, opts.seed.wrapping_add(s as u64))?;
            let corr = correlation_matrix(&rho, &basis)?;
            for _ in 0..10 {
                let a = random_rd_vector(&basis, &mut rng);
                let b = random_rd_vector(&basis, &mut rng);
                let v = corr.bilinear(&a, &b);
                t.check(v.abs() <= cap, || {
                    format!("d={d}: |<a, T b>| = {v} exceeds 2/d")
                });
            }
        }
    }
    Ok(t.finish())
}

fn ghz_closed_form(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("ghz-closed-form");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        let corr = correlation_matrix(&ghz_state(d)?, &basis)?;
        let err = corr.max_abs_diff(&ghz_correlation_closed_form(d)?);
        t.check(err < 1e-12, || {
            format!("d={d}: GHZ correlations off by {err:e}")
        });
        let gram = corr.gram();
        let c = 4.0 / (d * d) as f64;
        let err = (&gram - &ComplexMatrix::identity(corr.size()).scale(c)).max_abs();
        t.check(err < 1e-12, || {
            format!("d={d}: T^2 differs from (4/d^2) I by {err:e}")
        });
    }
    Ok(t.finish())
}

fn bound_ordering(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut t = Tally::new("bound-ordering");
    for &d in &opts.dims {
        let basis = basis_for(d, opts)?;
        let states = opts.trials.div_ceil(10).max(1);
        for s in 0..states {
            let rho = random_two_qudit_state(d, opts.seed.wrapping_add(1000 + s as u64))?;
            let b = chsh_bounds(&correlation_matrix(&rho, &basis)?)?;
            t.check(b.lower <= b.upper + 1e-12, || {
                format!("d={d}: lower {} > upper {}", b.lower, b.upper)
            });
            if d == 2 {
                t.check((b.lower - b.upper).abs() < 1e-12, || {
                    format!("qubit bounds differ: {b:?}")
                });
            }
        }
        let ghz = chsh_bounds(&correlation_matrix(&ghz_state(d)?, &basis)?)?;
        let want = ghz_bound_value(d)?;
        t.check((ghz.upper - want).abs() < 1e-12, || {
            format!("d={d}: GHZ upper bound {} differs from {want}", ghz.upper)
        });
    }
    Ok(t.finish())
}

/// Runs the selected suites (all when none are named).
pub fn run_suites(opts: &VerifyOptions) -> Result<Vec<SuiteOutcome>> {
    for name in &opts.suites {
        if !SUITES.contains(&name.as_str()) {
            return Err(CliError::Input(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )));
        }
    }
    if opts.dims.iter().any(|&d| d < 2) {
        return Err(qchsh_core::Error::InvalidDimension {
            dim: *opts.dims.iter().min().unwrap(),
        }
        .into());
    }
    let selected = |name: &str| opts.suites.is_empty() || opts.suites.iter().any(|s| s == name);
    let mut out = Vec::new();
    for name in SUITES {
        if !selected(name) {
            continue;
        }
        let outcome = match name {
            "orthogonality" => orthogonality(opts),
            "lemma1" => lemma1(opts),
            "roundtrip" => roundtrip(opts),
            "correlation-bound" => correlation_bound(opts),
            "ghz-closed-form" => ghz_closed_form(opts),
            "bound-ordering" => bound_ordering(opts),
            _ => unreachable!("suite list is fixed"),
        };
        out.push(outcome?);
    }
    Ok(out)
}
