use rayon::prelude::*;

use qchsh_core::optimizer::{SeesawConfig, SeesawProblem, SeesawResult};
use qchsh_core::representation::GellMannBasis;
use qchsh_core::states::TwoQuditState;

use crate::error::{CliError, Result};

/// Environment variable capping restart concurrency; 0 or unset means one
/// thread per core.
pub const THREADS_ENV: &str = "QCHSH_THREADS";

pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        _ => Ok(0),
    }
}

/// Runs the see-saw restarts on a rayon pool of `threads` workers.
///
/// Each restart owns its random stream, and the reduction orders restarts
/// by index, so the result does not depend on scheduling.
pub fn seesaw_parallel(
    rho: &TwoQuditState,
    basis: &GellMannBasis,
    config: SeesawConfig,
    threads: usize,
) -> Result<SeesawResult> {
    let problem = SeesawProblem::new(rho, basis, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))?;
    let outcomes = pool.install(|| {
        (0..config.restarts)
            .into_par_iter()
            .map(|i| problem.run_restart(i))
            .collect::<qchsh_core::Result<Vec<_>>>()
    })?;
    Ok(problem.finish(outcomes)?)
}
