//! Spectral bounds on the maximal CHSH expectation.
//!
//! With `lambda1 >= lambda2` the two largest eigenvalues of `T^T T`:
//!
//! ```text
//! d/(d-1) * sqrt(lambda1 + lambda2)  <=  max |CHSH|  <=  l_d^2 * d * sqrt(lambda1 + lambda2)
//! ```
//!
//! The two factors coincide at `d = 2`.

use core::f64::consts::SQRT_2;

use crate::correlation::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::numerics::hermitian_eigendecomposition;
use crate::representation::max_vector_norm_ld;

/// Universal quantum ceiling `2 sqrt(2)`.
pub const TSIRELSON: f64 = 2.0 * SQRT_2;

// noise floor for eigenvalues of T^T T
const GRAM_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub dim: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lower: f64,
    pub upper: f64,
    pub tsirelson: f64,
}

impl BoundsReport {
    /// Whether the upper bound is strictly below `2 sqrt(2)`.
    pub fn upper_improves_tsirelson(&self) -> bool {
        self.upper < self.tsirelson - 1e-12
    }
}

/// Two largest eigenvalues of `T^T T`, descending, counted with multiplicity.
pub fn top_two_singular(t: &CorrelationMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eigendecomposition(&t.gram())?;
    let clamp = |v: f64| {
        if v < 0.0 && v > -GRAM_CLAMP {
            0.0
        } else {
            v.max(0.0)
        }
    };
    let l1 = eig.values.first().copied().map_or(0.0, clamp);
    let l2 = eig.values.get(1).copied().map_or(0.0, clamp);
    Ok((l1, l2))
}

pub fn chsh_bounds(t: &CorrelationMatrix) -> Result<BoundsReport> {
    let d = t.dim();
    let (lambda1, lambda2) = top_two_singular(t)?;
    let root = libm::sqrt(lambda1 + lambda2);
    let ld = max_vector_norm_ld(d)?;
    let df = d as f64;
    Ok(BoundsReport {
        dim: d,
        lambda1,
        lambda2,
        lower: df / (df - 1.0) * root,
        upper: ld * ld * df * root,
        tsirelson: TSIRELSON,
    })
}

/// Exact qubit maximum `2 sqrt(lambda1 + lambda2)`.
pub fn horodecki_two_qubit(t: &CorrelationMatrix) -> Result<f64> {
    if t.dim() != 2 {
        return Err(Error::WrongDimension { dim: t.dim() });
    }
    let (l1, l2) = top_two_singular(t)?;
    Ok(2.0 * libm::sqrt(l1 + l2))
}

/// Correlation matrix of the GHZ state: `+2/d` on symmetric and diagonal
/// generators, `-2/d` on antisymmetric ones, zero elsewhere.
pub fn ghz_correlation_closed_form(d: usize) -> Result<CorrelationMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let c = 2.0 / d as f64;
    let pairs = d * (d - 1) / 2;
    let diag: alloc::vec::Vec<f64> = (0..d * d - 1)
        .map(|j| {
            if (pairs..2 * pairs).contains(&j) {
                -c
            } else {
                c
            }
        })
        .collect();
    CorrelationMatrix::from_diagonal(d, &diag)
}

/// Maximal CHSH value of the GHZ state, `2 l_d^2 sqrt(2)`.
pub fn ghz_bound_value(d: usize) -> Result<f64> {
    let ld = max_vector_norm_ld(d)?;
    Ok(2.0 * ld * ld * SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::correlation_matrix;
    use crate::representation::build_gellmann_basis;
    use crate::states::ghz_state;

    #[test]
    fn singular_pairs() {
        let bell = CorrelationMatrix::from_diagonal(2, &[1.0, -1.0, 1.0]).unwrap();
        let (a, b) = top_two_singular(&bell).unwrap();
        assert!((a - 1.0).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);
        assert_eq!(
            top_two_singular(&CorrelationMatrix::zeros(3)).unwrap(),
            (0.0, 0.0)
        );
        for d in 2..=6 {
            let basis = build_gellmann_basis(d).unwrap();
            let t = correlation_matrix(&ghz_state(d).unwrap(), &basis).unwrap();
            let (a, b) = top_two_singular(&t).unwrap();
            let want = 4.0 / (d * d) as f64;
            assert!((a - want).abs() < 1e-12 && (b - want).abs() < 1e-12);
        }
    }

    #[test]
    fn ghz_bounds() {
        let r3 = chsh_bounds(&ghz_correlation_closed_form(3).unwrap()).unwrap();
        assert!((r3.lambda1 + r3.lambda2 - 8.0 / 9.0).abs() < 1e-14);
        assert!((r3.lower - SQRT_2).abs() < 1e-14);
        assert!((r3.upper - 4.0 / 3.0 * SQRT_2).abs() < 1e-14);
        assert!(r3.upper_improves_tsirelson());

        let r2 = chsh_bounds(&ghz_correlation_closed_form(2).unwrap()).unwrap();
        assert!((r2.lower - TSIRELSON).abs() < 1e-14);
        assert_eq!(r2.lower, r2.upper);
        assert!(!r2.upper_improves_tsirelson());

        let z = chsh_bounds(&CorrelationMatrix::zeros(4)).unwrap();
        assert_eq!((z.lower, z.upper), (0.0, 0.0));
    }

    #[test]
    fn horodecki_values() {
        let bell = CorrelationMatrix::from_diagonal(2, &[1.0, -1.0, 1.0]).unwrap();
        assert!((horodecki_two_qubit(&bell).unwrap() - TSIRELSON).abs() < 1e-14);
        assert_eq!(
            horodecki_two_qubit(&CorrelationMatrix::zeros(2)).unwrap(),
            0.0
        );
        assert_eq!(
            horodecki_two_qubit(&CorrelationMatrix::zeros(3)),
            Err(Error::WrongDimension { dim: 3 })
        );
    }

    #[test]
    fn closed_form_patterns() {
        let t2 = ghz_correlation_closed_form(2).unwrap();
        assert_eq!(
            t2,
            CorrelationMatrix::from_diagonal(2, &[1.0, -1.0, 1.0]).unwrap()
        );
        let c = 2.0 / 3.0;
        let t3 = ghz_correlation_closed_form(3).unwrap();
        assert_eq!(
            t3,
            CorrelationMatrix::from_diagonal(3, &[c, c, c, -c, -c, -c, c, c]).unwrap()
        );
        assert!(ghz_correlation_closed_form(1).is_err());
    }

    #[test]
    fn ghz_values() {
        assert!((ghz_bound_value(2).unwrap() - 2.828_427_124_746_19).abs() < 1e-14);
        assert!((ghz_bound_value(3).unwrap() - 1.885_618_083_164_127).abs() < 1e-14);
        assert!((ghz_bound_value(5).unwrap() - 2.262_741_699_796_952).abs() < 1e-14);
        for d in 2..=9 {
            let upper = chsh_bounds(&ghz_correlation_closed_form(d).unwrap())
                .unwrap()
                .upper;
            assert!((upper - ghz_bound_value(d).unwrap()).abs() < 1e-12);
        }
    }
}
