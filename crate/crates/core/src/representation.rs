//! Generalized Gell-Mann basis and the correspondence between traceless
//! observables and real coefficient vectors.
//!
//! Operators are ordered as all symmetric pairs `(m, k)`, `m < k`, in
//! lexicographic order, then the antisymmetric pairs in the same order, then
//! the diagonal operators `l = 1..d-1`. Computational basis labels are
//! 1-based in names (`s_1_2`, `as_1_2`, `diag_1`) and 0-based in storage:
//! label `|m>` is row/column `m - 1`.
//!
//! An observable `X` with `tr X = 0` is written `X = sqrt(d/2) (n . Lambda)`,
//! so `n_j = tr[X Lambda_j] / sqrt(2d)` and `tr[X^2] = d |n|^2`. `X` has
//! spectrum in `[-1, 1]` exactly when `|n . Lambda|_op <= sqrt(2/d)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigendecomposition, ComplexMatrix};

/// Tolerance on operator norms for set membership.
pub const MEMBERSHIP_TOL: f64 = 1e-10;
/// Tolerance for classifying eigenvalues onto `{-1, 0, 1}`.
pub const EIGENVALUE_CLASS_TOL: f64 = 1e-9;

/// Which family a basis operator belongs to, with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Symmetric { m: usize, k: usize },
    Antisymmetric { m: usize, k: usize },
    Diagonal { l: usize },
}

impl GeneratorKind {
    pub fn label(&self) -> String {
        match *self {
            GeneratorKind::Symmetric { m, k } => format!("s_{m}_{k}"),
            GeneratorKind::Antisymmetric { m, k } => format!("as_{m}_{k}"),
            GeneratorKind::Diagonal { l } => format!("diag_{l}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Generator {
    kind: GeneratorKind,
    matrix: ComplexMatrix,
    // nonzero entries (row, col, value), at most d per operator
    entries: Vec<(usize, usize, Complex64)>,
}

/// The `d^2 - 1` generalized Gell-Mann matrices of SU(d).
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    dim: usize,
    generators: Vec<Generator>,
}

/// Builds the generalized Gell-Mann basis for qudit dimension `d`.
pub fn build_gellmann_basis(d: usize) -> Result<GellMannBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|m| ((m + 1)..d).map(move |k| (m, k)))
        .collect();

    for &(m, k) in &pairs {
        let one = Complex64::new(1.0, 0.0);
        generators.push(generator(
            d,
            GeneratorKind::Symmetric { m: m + 1, k: k + 1 },
            vec![(m, k, one), (k, m, one)],
        ));
    }
    for &(m, k) in &pairs {
        generators.push(generator(
            d,
            GeneratorKind::Antisymmetric { m: m + 1, k: k + 1 },
            vec![
                (m, k, Complex64::new(0.0, -1.0)),
                (k, m, Complex64::new(0.0, 1.0)),
            ],
        ));
    }
    for l in 1..d {
        let norm = libm::sqrt(2.0 / (l * (l + 1)) as f64);
        let mut entries: Vec<_> = (0..l).map(|j| (j, j, Complex64::new(norm, 0.0))).collect();
        entries.push((l, l, Complex64::new(-(l as f64) * norm, 0.0)));
        generators.push(generator(d, GeneratorKind::Diagonal { l }, entries));
    }
    Ok(GellMannBasis { dim: d, generators })
}

fn generator(d: usize, kind: GeneratorKind, entries: Vec<(usize, usize, Complex64)>) -> Generator {
    let mut matrix = ComplexMatrix::zeros(d, d);
    for &(i, j, v) in &entries {
        matrix[(i, j)] = v;
    }
    Generator {
        kind,
        matrix,
        entries,
    }
}

impl GellMannBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn operator(&self, j: usize) -> &ComplexMatrix {
        &self.generators[j].matrix
    }

    pub fn operators(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.generators.iter().map(|g| &g.matrix)
    }

    pub fn kind(&self, j: usize) -> GeneratorKind {
        self.generators[j].kind
    }

    pub fn label(&self, j: usize) -> String {
        self.generators[j].kind.label()
    }

    /// Nonzero `(row, col, value)` entries of generator `j`.
    pub fn entries(&self, j: usize) -> &[(usize, usize, Complex64)] {
        &self.generators[j].entries
    }

    /// Overwrites generator `j`. Exists so verification code can check
    /// that a damaged basis is detected.
    #[doc(hidden)]
    pub fn replace_operator(&mut self, j: usize, matrix: ComplexMatrix) {
        let d = self.dim;
        let mut entries = Vec::new();
        for r in 0..d {
            for c in 0..d {
                let v = matrix[(r, c)];
                if v.re != 0.0 || v.im != 0.0 {
                    entries.push((r, c, v));
                }
            }
        }
        self.generators[j] = Generator {
            kind: self.generators[j].kind,
            matrix,
            entries,
        };
    }

    /// `n . Lambda`.
    pub fn combine(&self, n: &[f64]) -> Result<ComplexMatrix> {
        self.check_len(n.len())?;
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (g, &c) in self.generators.iter().zip(n) {
            if c == 0.0 {
                continue;
            }
            for &(i, j, v) in &g.entries {
                m[(i, j)] += v * c;
            }
        }
        Ok(m)
    }

    /// `tr[X Lambda_j]`.
    pub fn trace_against(&self, j: usize, x: &ComplexMatrix) -> Complex64 {
        self.generators[j]
            .entries
            .iter()
            .map(|&(r, c, v)| x[(c, r)] * v)
            .sum()
    }

    /// `|n . Lambda|_op`.
    pub fn operator_norm_of(&self, n: &[f64]) -> Result<f64> {
        Ok(hermitian_eigendecomposition(&self.combine(n)?)?.max_abs_eigenvalue())
    }

    /// Radius `sqrt(2/d)` of the operator-norm ball defining the coefficient set.
    pub fn rd_radius(&self) -> f64 {
        libm::sqrt(2.0 / self.dim as f64)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: len,
            });
        }
        Ok(())
    }
}

/// Real coefficient vector of length `d^2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    dim: usize,
    components: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        Ok(Self { dim, components })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            components: vec![0.0; dim * dim - 1],
        }
    }

    /// Unit vector along generator `j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.components[j] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.components
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            components: self.components.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&x| x == 0.0)
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(
            self.dim, other.dim,
            "coefficient vectors of different dimension"
        );
        Self {
            dim: self.dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &CoefficientVector {
    type Output = CoefficientVector;

    fn add(self, rhs: &CoefficientVector) -> CoefficientVector {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &CoefficientVector {
    type Output = CoefficientVector;

    fn sub(self, rhs: &CoefficientVector) -> CoefficientVector {
        self.zip(rhs, |a, b| a - b)
    }
}

/// Traceless Hermitian observable together with its coefficient vector.
#[derive(Debug, Clone)]
pub struct TracelessObservable {
    matrix: ComplexMatrix,
    coefficients: CoefficientVector,
    operator_norm: f64,
}

impl TracelessObservable {
    /// Expands a traceless Hermitian matrix in `basis`.
    pub fn from_matrix(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<Self> {
        let coefficients = expand_observable(x, basis)?;
        let matrix = x.symmetrized();
        let operator_norm = hermitian_eigendecomposition(&matrix)?.max_abs_eigenvalue();
        Ok(Self {
            matrix,
            coefficients,
            operator_norm,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> &CoefficientVector {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.dim
    }

    pub fn operator_norm(&self) -> f64 {
        self.operator_norm
    }

    /// Spectrum inside `[-1, 1]` up to [`MEMBERSHIP_TOL`].
    pub fn in_ld(&self) -> bool {
        self.operator_norm <= 1.0 + MEMBERSHIP_TOL
    }
}

/// Coefficients `n_j = tr[X Lambda_j] / sqrt(2d)` of a traceless Hermitian `X`.
pub fn expand_observable(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<CoefficientVector> {
    let d = basis.dim();
    if x.rows() != d || x.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: x.rows(),
        });
    }
    let residual = x.hermitian_residual();
    if residual.is_nan() || residual > crate::numerics::HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let trace = x.trace().norm();
    if trace.is_nan() || trace > 1e-10 {
        return Err(Error::NotTraceless { trace });
    }
    let scale = 1.0 / libm::sqrt(2.0 * d as f64);
    let components = (0..basis.len())
        .map(|j| basis.trace_against(j, x).re * scale)
        .collect();
    Ok(CoefficientVector { dim: d, components })
}

/// `X = sqrt(d/2) (n . Lambda)`.
pub fn observable_from_coefficients(
    n: &CoefficientVector,
    basis: &GellMannBasis,
) -> Result<TracelessObservable> {
    if n.dim != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: n.dim,
        });
    }
    let matrix = basis
        .combine(&n.components)?
        .scale(libm::sqrt(basis.dim() as f64 / 2.0));
    let operator_norm = hermitian_eigendecomposition(&matrix)?.max_abs_eigenvalue();
    Ok(TracelessObservable {
        matrix,
        coefficients: n.clone(),
        operator_norm,
    })
}

/// Rescales `n` so that `|n . Lambda|_op = sqrt(2/d)`, placing it on the
/// boundary of the coefficient set.
pub fn project_into_rd(n: &CoefficientVector, basis: &GellMannBasis) -> Result<CoefficientVector> {
    if n.dim != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: n.dim,
        });
    }
    let norm = basis.operator_norm_of(&n.components)?;
    if norm == 0.0 || n.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(n.scale(basis.rd_radius() / norm))
}

/// `|n . Lambda|_op <= sqrt(2/d)` up to [`MEMBERSHIP_TOL`].
pub fn rd_membership(n: &CoefficientVector, basis: &GellMannBasis) -> Result<bool> {
    if n.dim != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: n.dim,
        });
    }
    Ok(basis.operator_norm_of(&n.components)? <= basis.rd_radius() + MEMBERSHIP_TOL)
}

/// Largest Euclidean norm of a member of the coefficient set: 1 for even
/// `d`, `sqrt((d-1)/d)` for odd `d`.
pub fn max_vector_norm_ld(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    Ok(if d.is_multiple_of(2) {
        1.0
    } else {
        libm::sqrt((d - 1) as f64 / d as f64)
    })
}

/// Multiplicity of the zero eigenvalue when the spectrum of `x` lies in
/// `{-1, 0, 1}`; `None` when some eigenvalue lies strictly between.
pub fn kernel_class(x: &TracelessObservable) -> Result<Option<usize>> {
    if !x.in_ld() {
        return Err(Error::NotInLd {
            operator_norm: x.operator_norm,
        });
    }
    let eig = hermitian_eigendecomposition(&x.matrix)?;
    let mut zeros = 0;
    for &v in &eig.values {
        if v.abs() <= EIGENVALUE_CLASS_TOL {
            zeros += 1;
        } else if (v.abs() - 1.0).abs() > EIGENVALUE_CLASS_TOL {
            return Ok(None);
        }
    }
    Ok(Some(zeros))
}

/// Coefficient vector `r_psi` of the pure state `|psi><psi|`:
/// `|psi><psi| = I/d + sqrt((d-1)/(2d)) (r_psi . Lambda)`.
pub fn pure_state_vector(psi: &[Complex64], basis: &GellMannBasis) -> Result<CoefficientVector> {
    let d = basis.dim();
    if psi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: psi.len(),
        });
    }
    let scale = libm::sqrt(d as f64 / (2.0 * (d - 1) as f64));
    let components = (0..basis.len())
        .map(|j| {
            let expectation: Complex64 = basis
                .entries(j)
                .iter()
                .map(|&(r, c, v)| psi[r].conj() * v * psi[c])
                .sum();
            expectation.re * scale
        })
        .collect();
    Ok(CoefficientVector { dim: d, components })
}
