//! Sweep execution, CSV/metadata output, and the analytic-vs-Monte-Carlo
//! validation report.
//!
//! Grid points are evaluated in parallel; rows come out in grid order no
//! matter which point finishes first. A failed evaluator marks its cell
//! empty (and logs a warning in the metadata) instead of aborting the run.
//! Values are formatted with 17 significant digits, so parsing an emitted
//! CSV reproduces the in-memory curve bit for bit.

use crate::analysis::{self, OutageQuery};
use crate::link::{capacity_ceiling, sndr_ceiling, LinkConfig};
use crate::montecarlo;
use crate::scenario::{
    db_to_linear, linear_to_db, ConfigError, Scenario, SweepAxis, SweepOutput, SweepSpec,
};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// One output record: the abscissa plus one cell per result column.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub abscissa_db: f64,
    /// Parallel to [`SweepResult::columns`]; `None` marks a failed or
    /// inapplicable cell.
    pub cells: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepMeta {
    pub tool_version: String,
    pub axis: SweepAxis,
    pub grid_db: Vec<f64>,
    pub outputs: Vec<SweepOutput>,
    pub trials: u64,
    pub seed: u64,
    pub scenario: Scenario,
    pub wall_time_s: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub columns: Vec<String>,
    pub points: Vec<CurvePoint>,
    pub meta: SweepMeta,
}

/// Run one sweep over the grid defined by `spec`, starting from `scenario`.
pub fn run_sweep(scenario: &Scenario, spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    scenario.resolve()?; // surface config problems before spending any time

    if spec.axis == SweepAxis::AvgSnrDb
        && spec
            .outputs
            .iter()
            .any(|o| matches!(o, SweepOutput::OpClosed | SweepOutput::OpQuad | SweepOutput::OpMc))
        && scenario.gamma_th_db.is_none()
    {
        return Err(ConfigError {
            problems: vec![
                "outage outputs on the avg_snr_db axis need scenario.gamma_th_db".to_string(),
            ],
        }
        .into());
    }

    let columns: Vec<String> = spec
        .outputs
        .iter()
        .flat_map(|o| o.columns().iter().map(|c| c.to_string()))
        .collect();

    let start = Instant::now();
    let evaluated: Vec<(CurvePoint, Vec<String>)> = spec
        .grid
        .par_iter()
        .enumerate()
        .map(|(idx, &abscissa_db)| evaluate_point(scenario, spec, idx as u64, abscissa_db))
        .collect();

    let mut points = Vec::with_capacity(evaluated.len());
    let mut warnings = Vec::new();
    for (p, w) in evaluated {
        points.push(p);
        warnings.extend(w);
    }

    Ok(SweepResult {
        columns,
        points,
        meta: SweepMeta {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            axis: spec.axis,
            grid_db: spec.grid.clone(),
            outputs: spec.outputs.clone(),
            trials: spec.trials,
            seed: spec.seed,
            scenario: scenario.clone(),
            wall_time_s: start.elapsed().as_secs_f64(),
            warnings,
        },
    })
}

fn evaluate_point(
    scenario: &Scenario,
    spec: &SweepSpec,
    point_idx: u64,
    abscissa_db: f64,
) -> (CurvePoint, Vec<String>) {
    let mut warnings = Vec::new();
    let mut cells = Vec::new();

    let (resolved, gamma_th) = match spec.axis {
        SweepAxis::AvgSnrDb => (
            scenario.with_avg_snr_db(abscissa_db).resolve(),
            scenario.gamma_th_linear().unwrap_or(1.0),
        ),
        SweepAxis::GammaThDb => (scenario.resolve(), db_to_linear(abscissa_db)),
    };
    let cfg = match resolved {
        Ok(cfg) => cfg,
        Err(e) => {
            warnings.push(format!("point {abscissa_db} dB: {e}"));
            let width: usize = spec.outputs.iter().map(|o| o.columns().len()).sum();
            return (
                CurvePoint {
                    abscissa_db,
                    cells: vec![None; width],
                },
                warnings,
            );
        }
    };

    let mut warn = |name: &str, err: String| {
        warnings.push(format!("point {abscissa_db} dB, {name}: {err}"));
    };

    for output in &spec.outputs {
        match output {
            SweepOutput::OpClosed => {
                let v = OutageQuery::new(&cfg, gamma_th)
                    .and_then(|q| analysis::op_closed_form(&q));
                match v {
                    Ok(v) => cells.push(Some(v)),
                    Err(e) => {
                        warn("op_closed", e.to_string());
                        cells.push(None);
                    }
                }
            }
            SweepOutput::OpQuad => {
                let v = OutageQuery::new(&cfg, gamma_th).and_then(|q| analysis::op_quadrature(&q));
                match v {
                    Ok(v) => cells.push(Some(v)),
                    Err(e) => {
                        warn("op_quad", e.to_string());
                        cells.push(None);
                    }
                }
            }
            SweepOutput::OpMc => {
                let est = montecarlo::estimate_op_at(gamma_th, &cfg, spec.trials, spec.seed, point_idx);
                if est.unreliable {
                    warn(
                        "op_mc",
                        format!("fewer than ~10 outage events at {} trials", est.trials),
                    );
                }
                cells.push(Some(est.value));
                cells.push(Some(est.half_width));
            }
            SweepOutput::EcBound => match analysis::ec_upper_bound(&cfg) {
                Ok(v) => cells.push(Some(v)),
                Err(e) => {
                    warn("ec_bound", e.to_string());
                    cells.push(None);
                }
            },
            SweepOutput::EcApprox => cells.push(Some(analysis::ec_approx(&cfg))),
            SweepOutput::EcNumeric => match analysis::ec_numeric(&cfg) {
                Ok(v) => cells.push(Some(v)),
                Err(e) => {
                    warn("ec_numeric", e.to_string());
                    cells.push(None);
                }
            },
            SweepOutput::EcMc => {
                let est = montecarlo::estimate_ec_at(&cfg, spec.trials, spec.seed, point_idx);
                cells.push(Some(est.value));
                cells.push(Some(est.half_width));
            }
            SweepOutput::Ceilings => {
                match sndr_ceiling(&cfg.impairments) {
                    Ok(g) => {
                        cells.push(Some(linear_to_db(g)));
                        cells.push(Some(
                            capacity_ceiling(&cfg.impairments, cfg.detection()).unwrap(),
                        ));
                    }
                    Err(_) => {
                        // ideal hardware: no ceilings to report
                        cells.push(None);
                        cells.push(None);
                    }
                }
            }
        }
    }

    (CurvePoint { abscissa_db, cells }, warnings)
}

// -- CSV and metadata ---------------------------------------------------------

fn format_cell(v: Option<f64>) -> String {
    match v {
        // 17 significant digits: exact f64 round trip
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str("abscissa_db");
    for c in &result.columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for p in &result.points {
        out.push_str(&format_cell(Some(p.abscissa_db)));
        for cell in &p.cells {
            out.push(',');
            out.push_str(&format_cell(*cell));
        }
        out.push('\n');
    }
    out
}

/// Parse a CSV produced by [`to_csv`] back into columns and points.
pub fn from_csv(text: &str) -> Result<(Vec<String>, Vec<CurvePoint>), ConfigError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ConfigError {
        problems: vec!["empty CSV".to_string()],
    })?;
    let mut cols = header.split(',');
    if cols.next() != Some("abscissa_db") {
        return Err(ConfigError {
            problems: vec!["first CSV column must be abscissa_db".to_string()],
        });
    }
    let columns: Vec<String> = cols.map(|s| s.to_string()).collect();
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let abscissa: f64 = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|e| ConfigError {
                problems: vec![format!("row {i}: bad abscissa: {e}")],
            })?;
        let cells: Result<Vec<Option<f64>>, ConfigError> = fields
            .map(|f| {
                if f.is_empty() {
                    Ok(None)
                } else {
                    f.parse::<f64>().map(Some).map_err(|e| ConfigError {
                        problems: vec![format!("row {i}: bad cell '{f}': {e}")],
                    })
                }
            })
            .collect();
        points.push(CurvePoint {
            abscissa_db: abscissa,
            cells: cells?,
        });
    }
    Ok((columns, points))
}

pub fn meta_to_json(result: &SweepResult) -> String {
    serde_json::to_string_pretty(&result.meta).expect("metadata serializes")
}

/// Raw-sample dump for the `sample` subcommand.
pub fn samples_to_csv(cfg: &LinkConfig, count: u64, seed: u64) -> String {
    let rows = montecarlo::sample_trials(cfg, count, seed);
    let mut out = String::from("trial,gamma1,irradiance,gamma2,sndr\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!(
            "{i},{},{},{},{}\n",
            format_cell(Some(r.gamma1)),
            format_cell(Some(r.irradiance)),
            format_cell(Some(r.gamma2)),
            format_cell(Some(r.sndr)),
        ));
    }
    out
}

// -- Validation report ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub lines: Vec<CheckLine>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != CheckStatus::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let tag = match l.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "info",
            };
            out.push_str(&format!("[{tag}] {:<38} {}\n", l.name, l.detail));
        }
        out
    }
}

/// Cross-validate closed forms, defining integrals and Monte Carlo on one
/// scenario. Exit-decision: any FAIL line.
pub fn validate(scenario: &Scenario, trials: u64, seed: u64) -> Result<ValidationReport, SweepError> {
    let cfg = scenario.resolve()?;
    Ok(validation_report_split(&cfg, &cfg, trials, seed))
}

/// The validation engine with separately injectable analytic and
/// Monte Carlo configurations. `validate` passes the same configuration
/// twice; tests inject a corrupted analytic side as a negative control.
pub fn validation_report_split(
    analytic_cfg: &LinkConfig,
    mc_cfg: &LinkConfig,
    trials: u64,
    seed: u64,
) -> ValidationReport {
    let mut lines = Vec::new();

    // outage thresholds: the usual probe points, kept inside the feasible
    // region when impairments cap the SNDR
    let delta = analytic_cfg.impairments.delta();
    let thresholds: Vec<f64> = [1.0, 3.0, 10.0]
        .iter()
        .map(|&t| {
            if delta > 0.0 {
                f64::min(t, 0.8 / delta)
            } else {
                t
            }
        })
        .collect();

    for (i, &gamma_th) in thresholds.iter().enumerate() {
        let mc = montecarlo::estimate_op_at(gamma_th, mc_cfg, trials, seed, i as u64);
        let q = match OutageQuery::new(analytic_cfg, gamma_th) {
            Ok(q) => q,
            Err(e) => {
                lines.push(CheckLine {
                    name: format!("op threshold {gamma_th:.3}"),
                    status: CheckStatus::Fail,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        match analysis::op_quadrature(&q) {
            Ok(quad_v) => {
                let delta_v = (quad_v - mc.value).abs();
                let gate = 3.0 * mc.half_width.max(1e-9);
                lines.push(CheckLine {
                    name: format!("op quad vs MC @ γth = {gamma_th:.3}"),
                    status: if delta_v <= gate {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    },
                    detail: format!(
                        "quad {quad_v:.6e}, MC {:.6e} ± {:.2e}, |Δ| = {delta_v:.2e}",
                        mc.value, mc.half_width
                    ),
                });
                match analysis::op_closed_form(&q) {
                    Ok(closed_v) => {
                        let d = (closed_v - quad_v).abs();
                        lines.push(CheckLine {
                            name: format!("op closed vs quad @ γth = {gamma_th:.3}"),
                            status: if d <= 1e-5 {
                                CheckStatus::Pass
                            } else {
                                CheckStatus::Fail
                            },
                            detail: format!("closed {closed_v:.6e}, quad {quad_v:.6e}, |Δ| = {d:.2e}"),
                        });
                    }
                    Err(analysis::AnalysisError::UnsupportedParameters(msg)) => {
                        lines.push(CheckLine {
                            name: format!("op closed form @ γth = {gamma_th:.3}"),
                            status: CheckStatus::Info,
                            detail: format!("skipped: {msg}"),
                        });
                    }
                    Err(e) => lines.push(CheckLine {
                        name: format!("op closed form @ γth = {gamma_th:.3}"),
                        status: CheckStatus::Fail,
                        detail: e.to_string(),
                    }),
                }
            }
            Err(e) => lines.push(CheckLine {
                name: format!("op quadrature @ γth = {gamma_th:.3}"),
                status: CheckStatus::Fail,
                detail: e.to_string(),
            }),
        }
    }

    // ergodic capacity: MC vs numeric integral, and the upper bound
    let mc_ec = montecarlo::estimate_ec_at(mc_cfg, trials, seed, 1000);
    match analysis::ec_numeric(analytic_cfg) {
        Ok(num) => {
            let d = (num - mc_ec.value).abs();
            let gate = 3.0 * mc_ec.half_width + 2e-4;
            lines.push(CheckLine {
                name: "ec numeric vs MC".to_string(),
                status: if d <= gate {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                detail: format!(
                    "numeric {num:.6}, MC {:.6} ± {:.1e}, |Δ| = {d:.2e}",
                    mc_ec.value, mc_ec.half_width
                ),
            });
        }
        Err(e) => lines.push(CheckLine {
            name: "ec numeric".to_string(),
            status: CheckStatus::Fail,
            detail: e.to_string(),
        }),
    }
    match analysis::ec_upper_bound(analytic_cfg) {
        Ok(bound) => {
            let ok = mc_ec.value <= bound + 3.0 * mc_ec.half_width;
            lines.push(CheckLine {
                name: "ec MC under upper bound".to_string(),
                status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: format!("MC {:.6} ± {:.1e}, bound {bound:.6}", mc_ec.value, mc_ec.half_width),
            });
        }
        Err(analysis::AnalysisError::UnsupportedParameters(msg)) => lines.push(CheckLine {
            name: "ec upper bound".to_string(),
            status: CheckStatus::Info,
            detail: format!("skipped: {msg}"),
        }),
        Err(e) => lines.push(CheckLine {
            name: "ec upper bound".to_string(),
            status: CheckStatus::Fail,
            detail: e.to_string(),
        }),
    }
    lines.push(CheckLine {
        name: "ec first-moment approximation".to_string(),
        status: CheckStatus::Info,
        detail: format!("{:.6} (diagnostic, ±0.5 bps/Hz band)", analysis::ec_approx(analytic_cfg)),
    });

    // ceilings
    match sndr_ceiling(&analytic_cfg.impairments) {
        Ok(g) => {
            let c = capacity_ceiling(&analytic_cfg.impairments, analytic_cfg.detection()).unwrap();
            lines.push(CheckLine {
                name: "impairment ceilings".to_string(),
                status: CheckStatus::Info,
                detail: format!("SNDR {:.4} dB, capacity {c:.4} bps/Hz", linear_to_db(g)),
            });
        }
        Err(_) => lines.push(CheckLine {
            name: "impairment ceilings".to_string(),
            status: CheckStatus::Info,
            detail: "none (ideal hardware)".to_string(),
        }),
    }

    ValidationReport { lines }
}
