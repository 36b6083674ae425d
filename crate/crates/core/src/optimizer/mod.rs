//! Maximization of the CHSH expectation over traceless observables with
//! spectrum in `[-1, 1]`.
//!
//! Two alternating (see-saw) schemes are provided. `UpdateMode::Paper`
//! replaces each party's vectors by the normalized directions
//! `sqrt(2/d) T(b1 +- b2) / |T(b1 +- b2) . Lambda|_op`. `UpdateMode::Exact`
//! solves each half-step exactly through [`traceless_linear_max`], so the
//! objective never decreases along a restart.

mod lp;
mod seesaw;

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::correlation::{
    chsh_expectation_via_correlations, correlation_matrix, ChshSettings, CorrelationMatrix,
};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::representation::{
    project_into_rd, CoefficientVector, GellMannBasis, TracelessObservable,
};
use crate::states::TwoQuditState;

pub use lp::{polytope_max, traceless_linear_max};
pub use seesaw::{seesaw_maximize, RestartOutcome, SeesawProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    Paper,
    Exact,
}

impl UpdateMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            UpdateMode::Paper => "paper",
            UpdateMode::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawConfig {
    pub mode: UpdateMode,
    pub restarts: usize,
    pub max_iterations: usize,
    /// Absolute change in the objective below which a restart stops.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            mode: UpdateMode::Exact,
            restarts: 32,
            max_iterations: 500,
            tolerance: 1e-10,
            seed: 0,
        }
    }
}

impl SeesawConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(
                "tolerance must be positive and finite",
            ));
        }
        Ok(())
    }
}

/// Best settings found by [`seesaw_maximize`].
#[derive(Debug, Clone)]
pub struct SeesawResult {
    pub value: f64,
    pub mode: UpdateMode,
    pub settings: ChshSettings,
    pub a1: CoefficientVector,
    pub a2: CoefficientVector,
    pub b1: CoefficientVector,
    pub b2: CoefficientVector,
    pub best_restart: usize,
    pub iterations_per_restart: Vec<usize>,
    pub converged: Vec<bool>,
    /// Whether each restart's half-step values never decreased.
    pub monotone: Vec<bool>,
}

impl SeesawResult {
    pub fn converged_count(&self) -> usize {
        self.converged.iter().filter(|&&c| c).count()
    }
}

/// Seeded generator for restart `stream` of a run keyed by `seed`.
pub fn restart_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Gaussian direction rescaled onto the boundary of the coefficient set.
pub fn random_rd_vector(basis: &GellMannBasis, rng: &mut ChaCha8Rng) -> CoefficientVector {
    loop {
        let g: Vec<f64> = (0..basis.len())
            .map(|_| StandardNormal.sample(&mut *rng))
            .collect();
        let v = CoefficientVector::new(basis.dim(), g).expect("length matches basis");
        if let Ok(p) = project_into_rd(&v, basis) {
            return p;
        }
    }
}

fn party_directions(
    t: &CorrelationMatrix,
    u: &CoefficientVector,
    v: &CoefficientVector,
    side: Side,
) -> [CoefficientVector; 2] {
    let (sum, diff) = (u + v, u - v);
    match side {
        Side::Alice => [t.apply(&sum), t.apply(&diff)],
        Side::Bob => [t.apply_transpose(&sum), t.apply_transpose(&diff)],
    }
}

/// Closed-form update of one party given the other's pair `(u, v)`.
///
/// Alice gets `sqrt(2/d) T(u +- v) / |T(u +- v) . Lambda|_op`; Bob gets the
/// same with `T` transposed and `(u, v)` Alice's vectors.
pub fn paper_party_update(
    t: &CorrelationMatrix,
    u: &CoefficientVector,
    v: &CoefficientVector,
    side: Side,
    basis: &GellMannBasis,
) -> Result<(CoefficientVector, CoefficientVector)> {
    let [w1, w2] = party_directions(t, u, v, side);
    let first = project_into_rd(&w1, basis).map_err(|_| Error::DegenerateDirection { slot: 0 })?;
    let second = project_into_rd(&w2, basis).map_err(|_| Error::DegenerateDirection { slot: 1 })?;
    Ok((first, second))
}

/// Argmax of `<a, w>` over the coefficient set, via the eigenvalue LP.
pub fn exact_direction_max(
    w: &CoefficientVector,
    basis: &GellMannBasis,
) -> Result<CoefficientVector> {
    let c = basis.combine(w.as_slice())?;
    let (x, _) = traceless_linear_max(&c)?;
    crate::representation::expand_observable(&x, basis)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaOptimum {
    pub theta: f64,
    /// Maximal CHSH value along the `theta` family, `sqrt(2d) sqrt(p1^2 + p2^2)`.
    pub value: f64,
}

// |T r|^2 / |T r . Lambda|_op, zero when T r vanishes
fn theta_weight(
    t: &CorrelationMatrix,
    r: &CoefficientVector,
    basis: &GellMannBasis,
) -> Result<f64> {
    let tr = t.apply(r);
    if tr.is_zero() {
        return Ok(0.0);
    }
    let op = basis.operator_norm_of(tr.as_slice())?;
    if op == 0.0 {
        return Ok(0.0);
    }
    Ok(tr.dot(&tr) / op)
}

/// CHSH value reached with `(b1 + b2)/2 = r1 cos(theta)`,
/// `(b1 - b2)/2 = r2 sin(theta)` and Alice's closed-form response.
pub fn theta_objective(
    t: &CorrelationMatrix,
    r1: &CoefficientVector,
    r2: &CoefficientVector,
    theta: f64,
    basis: &GellMannBasis,
) -> Result<f64> {
    let p1 = theta_weight(t, r1, basis)?;
    let p2 = theta_weight(t, r2, basis)?;
    let scale = libm::sqrt(2.0 * t.dim() as f64);
    Ok(scale * (p1 * libm::cos(theta) + p2 * libm::sin(theta)))
}

/// Maximizer of [`theta_objective`] over `[0, pi/2]`:
/// `tan(theta) = p2 / p1` with `p_i = |T r_i|^2 / |T r_i . Lambda|_op`.
pub fn optimal_theta(
    t: &CorrelationMatrix,
    r1: &CoefficientVector,
    r2: &CoefficientVector,
    basis: &GellMannBasis,
) -> Result<ThetaOptimum> {
    let p1 = theta_weight(t, r1, basis)?;
    let p2 = theta_weight(t, r2, basis)?;
    if p1 == 0.0 && p2 == 0.0 {
        return Err(Error::BothDegenerate);
    }
    let scale = libm::sqrt(2.0 * t.dim() as f64);
    Ok(ThetaOptimum {
        theta: libm::atan2(p2, p1),
        value: scale * libm::hypot(p1, p2),
    })
}

/// Settings attaining `2 l_d^2 sqrt(2)` on the GHZ state.
///
/// The computational basis is split into `floor(d/2)` consecutive qubit
/// blocks carrying the Bell-optimal Pauli settings; for odd `d` the last
/// basis vector is left in the kernel of every observable.
pub fn ghz_optimal_settings(d: usize, basis: &GellMannBasis) -> Result<ChshSettings> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    if basis.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: basis.dim(),
        });
    }
    let r = FRAC_1_SQRT_2;
    // (zz, xx) weights per block for A1, A2, B1, B2
    let weights = [(1.0, 0.0), (0.0, 1.0), (r, r), (r, -r)];
    let mut observables = Vec::with_capacity(4);
    for (wz, wx) in weights {
        let mut m = ComplexMatrix::zeros(d, d);
        for block in 0..d / 2 {
            let (p, q) = (2 * block, 2 * block + 1);
            m[(p, p)] = Complex64::new(wz, 0.0);
            m[(q, q)] = Complex64::new(-wz, 0.0);
            m[(p, q)] = Complex64::new(wx, 0.0);
            m[(q, p)] = Complex64::new(wx, 0.0);
        }
        observables.push(TracelessObservable::from_matrix(&m, basis)?);
    }
    let mut it = observables.into_iter();
    let (a1, a2, b1, b2) = (
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    );
    ChshSettings::new(a1, a2, b1, b2)
}

/// Largest `|CHSH|` over `samples` independent random 4-tuples of
/// coefficient vectors. Never exceeds the true maximum.
pub fn random_search_max(
    rho: &TwoQuditState,
    basis: &GellMannBasis,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let t = correlation_matrix(rho, basis)?;
    let mut rng = restart_rng(seed, u64::MAX);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let a1 = random_rd_vector(basis, &mut rng);
        let a2 = random_rd_vector(basis, &mut rng);
        let b1 = random_rd_vector(basis, &mut rng);
        let b2 = random_rd_vector(basis, &mut rng);
        let v = chsh_expectation_via_correlations(&t, &a1, &a2, &b1, &b2)?;
        best = best.max(v.abs());
    }
    Ok(best)
}
