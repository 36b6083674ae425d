//! Exact maximization of `tr[X C]` over traceless `X` with spectrum in `[-1, 1]`.
//!
//! The optimum shares the eigenbasis of `C`, which reduces the problem to
//! the linear program `max sum lambda_i mu_i` over `mu_i in [-1, 1]`,
//! `sum mu_i = 0`. Its optimum is `mu_i = sign(lambda_i - t)` with `t` a
//! median of the `lambda_i`, giving the value `sum |lambda_i - t|`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigendecomposition, ComplexMatrix, HERMITIAN_TOL};

const TIE_TOL: f64 = 1e-12;

/// Optimal vertex of the traceless eigenvalue polytope for eigenvalues
/// sorted in descending order. Returns `(mu, value)`.
pub fn polytope_max(descending: &[f64]) -> (Vec<f64>, f64) {
    let n = descending.len();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    let median = if n % 2 == 1 {
        descending[n / 2]
    } else {
        0.5 * (descending[n / 2 - 1] + descending[n / 2])
    };

    let mut mu = vec![0.0; n];
    let mut ties = Vec::new();
    let mut balance = 0i64;
    for (i, &l) in descending.iter().enumerate() {
        let gap = l - median;
        if gap.abs() < TIE_TOL {
            ties.push(i);
        } else if gap > 0.0 {
            mu[i] = 1.0;
            balance += 1;
        } else {
            mu[i] = -1.0;
            balance -= 1;
        }
    }
    // Spread the tied coordinates so the entries sum to zero: first cancel
    // the imbalance, then alternate +1/-1, leaving a 0 when one is left over.
    let mut tie_iter = ties.into_iter();
    while balance != 0 {
        let Some(i) = tie_iter.next() else { break };
        let s = if balance > 0 { -1.0 } else { 1.0 };
        mu[i] = s;
        balance += s as i64;
    }
    let rest: Vec<usize> = tie_iter.collect();
    for pair in rest.chunks(2) {
        if let [p, m] = *pair {
            mu[p] = 1.0;
            mu[m] = -1.0;
        }
    }
    let value = descending.iter().zip(&mu).map(|(l, m)| l * m).sum();
    (mu, value)
}

/// Maximizer of `tr[X C]` over traceless Hermitian `X` with spectrum in
/// `[-1, 1]`, together with the optimal value.
pub fn traceless_linear_max(c: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let residual = c.hermitian_residual();
    if residual.is_nan() || residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let trace = c.trace().norm();
    if trace.is_nan() || trace > 1e-10 {
        return Err(Error::NotTraceless { trace });
    }
    let eig = hermitian_eigendecomposition(c)?;
    let (mu, value) = polytope_max(&eig.values);
    Ok((eig.reconstruct_with(&mu), value))
}
