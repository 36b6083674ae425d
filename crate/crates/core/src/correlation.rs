//! Correlation matrix of a two-qudit state and the CHSH expectation.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{tensor_product, trace_inner_product, ComplexMatrix};
use crate::representation::{CoefficientVector, GellMannBasis, TracelessObservable};
use crate::states::TwoQuditState;

/// Largest imaginary part tolerated in a correlation entry.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// Real `(d^2-1) x (d^2-1)` matrix `T[i][j] = tr[rho (Lambda_i (x) Lambda_j)]`.
///
/// Rows index Alice's generators and columns Bob's, so `<a, T b>` pairs an
/// Alice coefficient vector with a Bob one.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    dim: usize,
    size: usize,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    /// Builds from row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        let size = dim * dim - 1;
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                found: entries.len(),
            });
        }
        Ok(Self { dim, size, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        let size = dim * dim - 1;
        Self {
            dim,
            size,
            entries: vec![0.0; size * size],
        }
    }

    pub fn from_diagonal(dim: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zeros(dim);
        if diag.len() != t.size {
            return Err(Error::DimensionMismatch {
                expected: t.size,
                found: diag.len(),
            });
        }
        for (i, &v) in diag.iter().enumerate() {
            t.entries[i * t.size + i] = v;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Side length `d^2 - 1`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self {
            dim: self.dim,
            size: n,
            entries,
        }
    }

    /// `T v`.
    pub fn apply(&self, v: &CoefficientVector) -> CoefficientVector {
        let out = (0..self.size)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.as_slice())
                    .map(|(t, x)| t * x)
                    .sum()
            })
            .collect();
        CoefficientVector::new(self.dim, out).expect("length fixed by construction")
    }

    /// `T^T v`.
    pub fn apply_transpose(&self, v: &CoefficientVector) -> CoefficientVector {
        let mut out = vec![0.0; self.size];
        for (i, &x) in v.as_slice().iter().enumerate() {
            for (o, t) in out.iter_mut().zip(self.row(i)) {
                *o += t * x;
            }
        }
        CoefficientVector::new(self.dim, out).expect("length fixed by construction")
    }

    /// `<a, T b>`.
    pub fn bilinear(&self, a: &CoefficientVector, b: &CoefficientVector) -> f64 {
        a.dot(&self.apply(b))
    }

    /// `T^T T` as a (real symmetric) complex matrix.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.size;
        ComplexMatrix::from_fn(n, n, |i, j| {
            let s: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
            Complex64::new(s, 0.0)
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.transpose()) <= tol
    }
}

/// `T[i][j] = tr[rho (Lambda_i (x) Lambda_j)]`.
///
/// Fails with `ImaginaryResidual` rather than truncating when an entry has
/// an imaginary part of at least [`IMAGINARY_TOL`].
pub fn correlation_matrix(rho: &TwoQuditState, basis: &GellMannBasis) -> Result<CorrelationMatrix> {
    let d = basis.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.dim(),
        });
    }
    let r = rho.rho();
    let n = basis.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // tr[rho M] = sum_{r,s} rho[s][r] M[r][s], M[(a d + c, b d + e)] = A[a][b] B[c][e]
            let mut acc = Complex64::new(0.0, 0.0);
            for &(a, b, v) in basis.entries(i) {
                for &(c, e, w) in basis.entries(j) {
                    acc += v * w * r[(b * d + e, a * d + c)];
                }
            }
            if acc.im.abs() >= IMAGINARY_TOL {
                return Err(Error::ImaginaryResidual {
                    row: i,
                    col: j,
                    imaginary: acc.im,
                });
            }
            entries.push(acc.re);
        }
    }
    Ok(CorrelationMatrix {
        dim: d,
        size: n,
        entries,
    })
}

/// Alice's `A1, A2` and Bob's `B1, B2`, each traceless with spectrum in `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct ChshSettings {
    pub a1: TracelessObservable,
    pub a2: TracelessObservable,
    pub b1: TracelessObservable,
    pub b2: TracelessObservable,
}

impl ChshSettings {
    pub fn new(
        a1: TracelessObservable,
        a2: TracelessObservable,
        b1: TracelessObservable,
        b2: TracelessObservable,
    ) -> Result<Self> {
        let d = a1.dim();
        for obs in [&a1, &a2, &b1, &b2] {
            if obs.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: obs.dim(),
                });
            }
            if !obs.in_ld() {
                return Err(Error::NotInLd {
                    operator_norm: obs.operator_norm(),
                });
            }
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    pub fn dim(&self) -> usize {
        self.a1.dim()
    }

    pub fn observables(&self) -> [&TracelessObservable; 4] {
        [&self.a1, &self.a2, &self.b1, &self.b2]
    }
}

/// `A1 (x) (B1 + B2) + A2 (x) (B1 - B2)`.
pub fn chsh_operator(settings: &ChshSettings) -> Result<ComplexMatrix> {
    let b_plus = settings.b1.matrix().try_add(settings.b2.matrix())?;
    let b_minus = settings.b1.matrix().try_sub(settings.b2.matrix())?;
    tensor_product(settings.a1.matrix(), &b_plus)?
        .try_add(&tensor_product(settings.a2.matrix(), &b_minus)?)
}

/// Signed CHSH expectation `tr[rho B_chsh]`.
pub fn chsh_expectation_direct(rho: &TwoQuditState, settings: &ChshSettings) -> Result<f64> {
    if rho.dim() != settings.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: settings.dim(),
        });
    }
    Ok(trace_inner_product(rho.rho(), &chsh_operator(settings)?)?.re)
}

/// Signed CHSH expectation `(d/2) (<a1, T(b1+b2)> + <a2, T(b1-b2)>)`.
pub fn chsh_expectation_via_correlations(
    t: &CorrelationMatrix,
    a1: &CoefficientVector,
    a2: &CoefficientVector,
    b1: &CoefficientVector,
    b2: &CoefficientVector,
) -> Result<f64> {
    for v in [a1, a2, b1, b2] {
        if v.dim() != t.dim() {
            return Err(Error::DimensionMismatch {
                expected: t.dim(),
                found: v.dim(),
            });
        }
    }
    let half_d = t.dim() as f64 / 2.0;
    Ok(half_d * (t.bilinear(a1, &(b1 + b2)) + t.bilinear(a2, &(b1 - b2))))
}
