//! Two-qudit density matrices.
//!
//! The product basis vector `|j> (x) |k>` sits at index `j*d + k` (0-based).

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigendecomposition, ComplexMatrix, HERMITIAN_TOL};

/// Tolerance on unit trace and on negative eigenvalues.
pub const STATE_TOL: f64 = 1e-10;

/// Validated two-qudit density matrix of size `d^2 x d^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQuditState {
    dim: usize,
    rho: ComplexMatrix,
}

impl TwoQuditState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `tr[rho^2]`.
    pub fn purity(&self) -> f64 {
        self.rho.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `rho` with the two tensor factors exchanged.
    pub fn swapped(&self) -> ComplexMatrix {
        let d = self.dim;
        let swap = |i: usize| (i % d) * d + i / d;
        ComplexMatrix::from_fn(d * d, d * d, |r, c| self.rho[(swap(r), swap(c))])
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    Ok(())
}

/// Projector onto `(1/sqrt(d)) sum_j |j>|j>`.
pub fn ghz_state(d: usize) -> Result<TwoQuditState> {
    check_dim(d)?;
    let n = d * d;
    let w = Complex64::new(1.0 / d as f64, 0.0);
    let mut rho = ComplexMatrix::zeros(n, n);
    for j in 0..d {
        for k in 0..d {
            rho[(j * d + j, k * d + k)] = w;
        }
    }
    Ok(TwoQuditState { dim: d, rho })
}

/// `G G^dagger / tr[G G^dagger]` for a `d^2 x d^2` matrix `G` of independent
/// standard complex normals, drawn from a ChaCha8 stream keyed by `seed`.
pub fn random_two_qudit_state(d: usize, seed: u64) -> Result<TwoQuditState> {
    check_dim(d)?;
    let n = d * d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<Complex64> = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let g = ComplexMatrix::from_row_major(n, n, entries)?;
    let ggd = g.matmul(&g.adjoint())?;
    let tr = ggd.trace().re;
    Ok(TwoQuditState {
        dim: d,
        rho: ggd.scale(1.0 / tr).symmetrized(),
    })
}

/// Checks Hermiticity, unit trace and positivity of `rho` and wraps it.
///
/// Inputs passing the Hermiticity check are stored symmetrized.
pub fn validate_state(rho: &ComplexMatrix, d: usize) -> Result<TwoQuditState> {
    check_dim(d)?;
    let n = d * d;
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rho.rows(),
        });
    }
    if !rho.is_finite() {
        return Err(Error::NotHermitian { residual: f64::NAN });
    }
    let residual = rho.hermitian_residual();
    if residual.is_nan() || residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let rho = rho.symmetrized();
    let trace = rho.trace().re;
    if trace.is_nan() || (trace - 1.0).abs() > STATE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let eig = hermitian_eigendecomposition(&rho)?;
    let min_eigenvalue = *eig.values.last().unwrap_or(&0.0);
    if min_eigenvalue < -STATE_TOL {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(TwoQuditState { dim: d, rho })
}

/// Max entrywise distance between two states of equal dimension.
pub fn state_distance(a: &TwoQuditState, b: &TwoQuditState) -> Option<f64> {
    (a.dim == b.dim).then(|| (&a.rho - &b.rho).max_abs())
}
