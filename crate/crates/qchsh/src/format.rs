//! On-disk and on-wire encodings.
//!
//! Matrices are nested row-major lists of `[re, im]` pairs. A state file is
//! `{"d": int, "rho": [[[re, im], ...], ...]}` with the `d^2 x d^2` density
//! matrix indexed so that `|j> (x) |k>` is row/column `j*d + k` (0-based).

use std::fs;
use std::path::Path;

use qchsh_core::numerics::ComplexMatrix;
use qchsh_core::representation::GellMannBasis;
use qchsh_core::states::{validate_state, TwoQuditState};
use qchsh_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Rounds to 15 significant digits; `-0.0` becomes `0.0`.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn sig15_vec(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig15).collect()
}

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|z| [sig15(z.re), sig15(z.im)])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson, n: usize) -> Result<ComplexMatrix> {
    if rows.len() != n {
        return Err(CliError::Core(qchsh_core::Error::DimensionMismatch {
            expected: n,
            found: rows.len(),
        }));
    }
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(CliError::Core(qchsh_core::Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            }));
        }
        data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    Ok(ComplexMatrix::from_row_major(n, n, data)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    pub rho: MatrixJson,
}

impl StateFile {
    pub fn from_state(state: &TwoQuditState) -> Self {
        Self {
            d: state.dim(),
            rho: matrix_to_json(state.rho()),
        }
    }

    pub fn into_state(self) -> Result<TwoQuditState> {
        if self.d < 2 {
            return Err(qchsh_core::Error::InvalidDimension { dim: self.d }.into());
        }
        let n = self
            .d
            .checked_mul(self.d)
            .ok_or_else(|| CliError::Input(format!("dimension {} is too large", self.d)))?;
        let rho = matrix_from_json(&self.rho, n)?;
        Ok(validate_state(&rho, self.d)?)
    }
}

pub fn parse_state(text: &str) -> Result<TwoQuditState> {
    let file: StateFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed state file: {e}")))?;
    file.into_state()
}

pub fn read_state_file(path: &Path) -> Result<TwoQuditState> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text)
}

#[derive(Debug, Serialize)]
pub struct BasisExport {
    pub d: usize,
    pub operators: Vec<MatrixJson>,
}

impl BasisExport {
    pub fn new(basis: &GellMannBasis) -> Self {
        Self {
            d: basis.dim(),
            operators: basis.operators().map(matrix_to_json).collect(),
        }
    }
}

/// Writes a table with a header row; cells are already formatted.
pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Float cell for CSV output, 15 significant digits.
pub fn csv_float(x: f64) -> String {
    let x = sig15(x);
    if x != 0.0 && x.abs() < 1e-5 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}
