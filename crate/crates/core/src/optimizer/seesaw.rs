use alloc::vec::Vec;

use core::f64::consts::FRAC_PI_4;

use super::{
    exact_direction_max, ghz_optimal_settings, optimal_theta, party_directions, random_rd_vector,
    restart_rng, SeesawConfig, SeesawResult, Side, UpdateMode,
};
use crate::correlation::{
    chsh_expectation_via_correlations, correlation_matrix, ChshSettings, CorrelationMatrix,
};
use crate::error::{Error, Result};
use crate::numerics::hermitian_eigendecomposition;
use crate::representation::{
    observable_from_coefficients, project_into_rd, CoefficientVector, GellMannBasis,
};
use crate::states::{ghz_state, state_distance, TwoQuditState};

const GHZ_MATCH_TOL: f64 = 1e-8;
const DEGENERATE_RETRIES: usize = 8;
const MONOTONE_SLACK: f64 = 1e-12;

/// Outcome of a single see-saw restart.
#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub index: usize,
    pub value: f64,
    pub vectors: [CoefficientVector; 4],
    pub iterations: usize,
    pub converged: bool,
    pub monotone: bool,
    /// Objective after every half-step.
    pub trace: Vec<f64>,
}

/// Shared, immutable inputs of a see-saw run. Restarts are independent and
/// may be evaluated in any order or concurrently.
#[derive(Debug, Clone)]
pub struct SeesawProblem<'a> {
    basis: &'a GellMannBasis,
    correlations: CorrelationMatrix,
    config: SeesawConfig,
    anchor: Option<(CoefficientVector, CoefficientVector)>,
}

impl<'a> SeesawProblem<'a> {
    pub fn new(
        rho: &TwoQuditState,
        basis: &'a GellMannBasis,
        config: SeesawConfig,
    ) -> Result<Self> {
        config.validate()?;
        let correlations = correlation_matrix(rho, basis)?;
        let anchor = structured_start(rho, basis, &correlations)?;
        Ok(Self {
            basis,
            correlations,
            config,
            anchor,
        })
    }

    pub fn correlations(&self) -> &CorrelationMatrix {
        &self.correlations
    }

    pub fn config(&self) -> &SeesawConfig {
        &self.config
    }

    fn value(&self, v: &[CoefficientVector; 4]) -> Result<f64> {
        chsh_expectation_via_correlations(&self.correlations, &v[0], &v[1], &v[2], &v[3])
    }

    /// Runs restart `index`. Restart 0 starts from the structured guess when
    /// one is available, all others from random boundary vectors.
    pub fn run_restart(&self, index: usize) -> Result<RestartOutcome> {
        let basis = self.basis;
        let t = &self.correlations;
        let mut rng = restart_rng(self.config.seed, index as u64);
        let (b1, b2) = match (&self.anchor, index) {
            (Some(anchor), 0) => anchor.clone(),
            _ => (
                random_rd_vector(basis, &mut rng),
                random_rd_vector(basis, &mut rng),
            ),
        };
        let zero = CoefficientVector::zeros(basis.dim());
        let mut v = [zero.clone(), zero, b1, b2];

        let mut trace = Vec::new();
        let mut best: Option<(f64, [CoefficientVector; 4])> = None;
        let mut converged = false;
        let mut iterations = 0;
        let mut previous = f64::NAN;

        'outer: for _ in 0..self.config.max_iterations {
            iterations += 1;
            for side in [Side::Alice, Side::Bob] {
                let (u, w) = match side {
                    Side::Alice => (&v[2], &v[3]),
                    Side::Bob => (&v[0], &v[1]),
                };
                let directions = party_directions(t, u, w, side);
                let updated = match self.config.mode {
                    UpdateMode::Exact => [
                        exact_direction_max(&directions[0], basis)?,
                        exact_direction_max(&directions[1], basis)?,
                    ],
                    UpdateMode::Paper => {
                        let mut out = [
                            CoefficientVector::zeros(basis.dim()),
                            CoefficientVector::zeros(basis.dim()),
                        ];
                        for (slot, dir) in directions.iter().enumerate() {
                            match paper_slot(dir, basis, &mut rng)? {
                                Some(x) => out[slot] = x,
                                None => break 'outer,
                            }
                        }
                        out
                    }
                };
                let [x, y] = updated;
                match side {
                    Side::Alice => {
                        v[0] = x;
                        v[1] = y;
                    }
                    Side::Bob => {
                        v[2] = x;
                        v[3] = y;
                    }
                }
                let value = self.value(&v)?;
                trace.push(value);
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, v.clone()));
                }
            }
            let current = *trace.last().expect("two half-steps recorded");
            if (current - previous).abs() < self.config.tolerance {
                converged = true;
                break;
            }
            previous = current;
        }

        let monotone = trace
            .windows(2)
            .all(|w| w[1] >= w[0] - MONOTONE_SLACK * w[0].abs().max(1.0));
        let (value, vectors) = match best {
            Some(b) => b,
            None => (self.value(&v)?, v),
        };
        Ok(RestartOutcome {
            index,
            value,
            vectors,
            iterations,
            converged,
            monotone,
            trace,
        })
    }

    /// Picks the best restart (lowest index among equal values) and builds
    /// the certificate observables.
    pub fn finish(&self, mut outcomes: Vec<RestartOutcome>) -> Result<SeesawResult> {
        outcomes.sort_by_key(|o| o.index);
        let best = outcomes
            .iter()
            .fold(None::<&RestartOutcome>, |acc, o| match acc {
                Some(b) if b.value >= o.value => Some(b),
                _ => Some(o),
            })
            .ok_or(Error::InvalidConfig("restarts must be at least 1"))?;
        let [a1, a2, b1, b2] = best.vectors.clone();
        let obs = |n: &CoefficientVector| observable_from_coefficients(n, self.basis);
        let settings = ChshSettings::new(obs(&a1)?, obs(&a2)?, obs(&b1)?, obs(&b2)?)?;
        Ok(SeesawResult {
            value: best.value,
            mode: self.config.mode,
            settings,
            a1,
            a2,
            b1,
            b2,
            best_restart: best.index,
            iterations_per_restart: outcomes.iter().map(|o| o.iterations).collect(),
            converged: outcomes.iter().map(|o| o.converged).collect(),
            monotone: outcomes.iter().map(|o| o.monotone).collect(),
        })
    }
}

// Closed-form slot update; a vanishing direction is replaced by a fresh
// random vector a bounded number of times.
fn paper_slot(
    direction: &CoefficientVector,
    basis: &GellMannBasis,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Option<CoefficientVector>> {
    match project_into_rd(direction, basis) {
        Ok(x) => return Ok(Some(x)),
        Err(Error::ZeroVector) => {}
        Err(e) => return Err(e),
    }
    for _ in 0..DEGENERATE_RETRIES {
        let candidate = random_rd_vector(basis, rng);
        if !candidate.is_zero() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Initial Bob pair for restart 0: the GHZ-optimal settings when `rho` is a
/// GHZ state, otherwise the top two right singular directions of `T`
/// combined at the optimal angle.
fn structured_start(
    rho: &TwoQuditState,
    basis: &GellMannBasis,
    t: &CorrelationMatrix,
) -> Result<Option<(CoefficientVector, CoefficientVector)>> {
    let d = basis.dim();
    let ghz = ghz_state(d)?;
    if state_distance(rho, &ghz).is_some_and(|dist| dist <= GHZ_MATCH_TOL) {
        let s = ghz_optimal_settings(d, basis)?;
        return Ok(Some((
            s.b1.coefficients().clone(),
            s.b2.coefficients().clone(),
        )));
    }
    let eig = hermitian_eigendecomposition(&t.gram())?;
    let column = |k: usize| {
        let v = (0..t.size()).map(|i| eig.vectors[(i, k)].re).collect();
        CoefficientVector::new(d, v).expect("length matches basis")
    };
    let (Ok(r1), Ok(r2)) = (
        project_into_rd(&column(0), basis),
        project_into_rd(&column(1), basis),
    ) else {
        return Ok(None);
    };
    let theta = match optimal_theta(t, &r1, &r2, basis) {
        Ok(opt) => opt.theta,
        Err(Error::BothDegenerate) => FRAC_PI_4,
        Err(e) => return Err(e),
    };
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    let b1 = &r1.scale(c) + &r2.scale(s);
    let b2 = &r1.scale(c) - &r2.scale(s);
    match (project_into_rd(&b1, basis), project_into_rd(&b2, basis)) {
        (Ok(b1), Ok(b2)) => Ok(Some((b1, b2))),
        _ => Ok(None),
    }
}

/// Best of `config.restarts` independent see-saw restarts, run sequentially.
pub fn seesaw_maximize(
    rho: &TwoQuditState,
    basis: &GellMannBasis,
    config: SeesawConfig,
) -> Result<SeesawResult> {
    let problem = SeesawProblem::new(rho, basis, config)?;
    let outcomes = (0..config.restarts)
        .map(|i| problem.run_restart(i))
        .collect::<Result<Vec<_>>>()?;
    problem.finish(outcomes)
}
