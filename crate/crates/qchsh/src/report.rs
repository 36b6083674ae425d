//! JSON reports emitted by the command-line tool. Every float is rounded to
//! 15 significant digits so identical runs produce identical bytes.

use qchsh_core::bounds::{chsh_bounds, ghz_bound_value, BoundsReport, TSIRELSON};
use qchsh_core::correlation::{chsh_expectation_direct, correlation_matrix, CorrelationMatrix};
use qchsh_core::optimizer::{ghz_optimal_settings, SeesawConfig, SeesawResult};
use qchsh_core::representation::build_gellmann_basis;
use qchsh_core::states::ghz_state;
use serde::Serialize;

use crate::error::Result;
use crate::format::{csv_float, csv_table, matrix_to_json, sig15, sig15_vec, MatrixJson};
use crate::parallel::seesaw_parallel;

#[derive(Debug, Serialize)]
pub struct BoundsJson {
    pub d: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lower: f64,
    pub upper: f64,
    pub tsirelson: f64,
    pub upper_improves_tsirelson: bool,
}

impl From<&BoundsReport> for BoundsJson {
    fn from(b: &BoundsReport) -> Self {
        Self {
            d: b.dim,
            lambda1: sig15(b.lambda1),
            lambda2: sig15(b.lambda2),
            lower: sig15(b.lower),
            upper: sig15(b.upper),
            tsirelson: sig15(b.tsirelson),
            upper_improves_tsirelson: b.upper_improves_tsirelson(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CorrelationJson {
    pub d: usize,
    #[serde(rename = "T")]
    pub t: Vec<Vec<f64>>,
}

impl From<&CorrelationMatrix> for CorrelationJson {
    fn from(t: &CorrelationMatrix) -> Self {
        Self {
            d: t.dim(),
            t: (0..t.size()).map(|i| sig15_vec(t.row(i))).collect(),
        }
    }
}

/// Correlation matrix as CSV with generator labels on both axes.
pub fn correlation_csv(t: &CorrelationMatrix) -> Result<String> {
    let basis = build_gellmann_basis(t.dim())?;
    let labels: Vec<String> = (0..basis.len()).map(|j| basis.label(j)).collect();
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    let rows: Vec<Vec<String>> = (0..t.size())
        .map(|i| {
            let mut row = vec![labels[i].clone()];
            row.extend(t.row(i).iter().map(|&x| csv_float(x)));
            row
        })
        .collect();
    Ok(csv_table(&header, &rows))
}

#[derive(Debug, Serialize)]
pub struct SettingsJson {
    pub a1: MatrixJson,
    pub a2: MatrixJson,
    pub b1: MatrixJson,
    pub b2: MatrixJson,
}

#[derive(Debug, Serialize)]
pub struct OptimizeJson {
    pub d: usize,
    pub value: f64,
    pub mode: &'static str,
    pub restarts: usize,
    pub converged_count: usize,
    pub best_restart: usize,
    pub monotone: bool,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub b1: Vec<f64>,
    pub b2: Vec<f64>,
    pub settings: SettingsJson,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub tsirelson_gap: f64,
}

impl OptimizeJson {
    pub fn new(result: &SeesawResult, bounds: &BoundsReport) -> Self {
        let s = &result.settings;
        Self {
            d: bounds.dim,
            value: sig15(result.value),
            mode: result.mode.as_str(),
            restarts: result.converged.len(),
            converged_count: result.converged_count(),
            best_restart: result.best_restart,
            monotone: result.monotone.iter().all(|&m| m),
            a1: sig15_vec(result.a1.as_slice()),
            a2: sig15_vec(result.a2.as_slice()),
            b1: sig15_vec(result.b1.as_slice()),
            b2: sig15_vec(result.b2.as_slice()),
            settings: SettingsJson {
                a1: matrix_to_json(s.a1.matrix()),
                a2: matrix_to_json(s.a2.matrix()),
                b1: matrix_to_json(s.b1.matrix()),
                b2: matrix_to_json(s.b2.matrix()),
            },
            upper_bound: sig15(bounds.upper),
            lower_bound: sig15(bounds.lower),
            tsirelson_gap: sig15(TSIRELSON - result.value),
        }
    }
}

/// One dimension of the GHZ table.
#[derive(Debug, Clone, Serialize)]
pub struct GhzRow {
    pub d: usize,
    /// `2 l_d^2 sqrt(2)`.
    pub closed_form: f64,
    /// Value of the explicit block settings.
    pub certificate: f64,
    pub seesaw: f64,
    pub upper_bound: f64,
    /// `2 sqrt(2) - upper_bound`.
    pub tsirelson_gap: f64,
    pub upper_below_tsirelson: bool,
}

#[derive(Debug, Serialize)]
pub struct GhzTableJson {
    pub rows: Vec<GhzRow>,
}

/// Unrounded GHZ row.
pub fn ghz_row(d: usize, config: SeesawConfig, threads: usize) -> Result<GhzRow> {
    let basis = build_gellmann_basis(d)?;
    let rho = ghz_state(d)?;
    let closed_form = ghz_bound_value(d)?;
    let certificate = chsh_expectation_direct(&rho, &ghz_optimal_settings(d, &basis)?)?;
    let seesaw = seesaw_parallel(&rho, &basis, config, threads)?.value;
    let bounds = chsh_bounds(&correlation_matrix(&rho, &basis)?)?;
    Ok(GhzRow {
        d,
        closed_form,
        certificate,
        seesaw,
        upper_bound: bounds.upper,
        tsirelson_gap: TSIRELSON - bounds.upper,
        upper_below_tsirelson: bounds.upper_improves_tsirelson(),
    })
}

pub fn round_row(r: &GhzRow) -> GhzRow {
    GhzRow {
        closed_form: sig15(r.closed_form),
        certificate: sig15(r.certificate),
        seesaw: sig15(r.seesaw),
        upper_bound: sig15(r.upper_bound),
        tsirelson_gap: sig15(r.tsirelson_gap),
        ..r.clone()
    }
}

pub fn ghz_table_csv(rows: &[GhzRow]) -> String {
    let header: Vec<String> = [
        "d",
        "closed_form",
        "certificate",
        "seesaw",
        "upper_bound",
        "tsirelson_gap",
        "upper_below_tsirelson",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                csv_float(r.closed_form),
                csv_float(r.certificate),
                csv_float(r.seesaw),
                csv_float(r.upper_bound),
                csv_float(r.tsirelson_gap),
                r.upper_below_tsirelson.to_string(),
            ]
        })
        .collect();
    csv_table(&header, &body)
}
