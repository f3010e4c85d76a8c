//! Scenario files and sweep definitions.
//!
//! A scenario is one JSON document mirroring [`LinkConfig`]. dB-valued
//! fields carry a `_db` suffix and are converted to linear exactly once, at
//! this boundary. Optional fields: `(k, l)` fall back to continued-fraction
//! rationalization of β₂/β₁, `(omega1, omega2)` to the unit-mean scales.
//!
//! ```json
//! {
//!   "rf": { "relay_count": 3, "selected_rank": 2, "correlation": 0.7, "avg_snr_db": 20.0 },
//!   "optical": { "beta1": 1.0, "beta2": 1.0, "detection": "heterodyne", "avg_elec_snr_db": 20.0 },
//!   "impairments": { "kappa1": 0.1, "kappa2": 0.1 },
//!   "gamma_th_db": 3.0
//! }
//! ```

use crate::fso::{rationalize_kl, weibull_scale_unit_mean, Detection, OpticalHopConfig};
use crate::link::{ImpairmentProfile, LinkConfig};
use crate::rf::RfHopConfig;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Configuration rejected, with one message per offending field.
#[derive(Debug, Clone, Error)]
pub struct ConfigError {
    pub problems: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.problems.join("; "))
    }
}

impl ConfigError {
    fn one(msg: impl Into<String>) -> Self {
        ConfigError {
            problems: vec![msg.into()],
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RfSection {
    pub relay_count: u32,
    pub selected_rank: u32,
    pub correlation: f64,
    pub avg_snr_db: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OpticalSection {
    pub beta1: f64,
    pub beta2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2: Option<f64>,
    pub detection: Detection,
    pub avg_elec_snr_db: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ImpairmentSection {
    pub kappa1: f64,
    pub kappa2: f64,
}

/// One link scenario as read from disk.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub rf: RfSection,
    pub optical: OpticalSection,
    pub impairments: ImpairmentSection,
    /// Outage threshold used when the sweep axis is not the threshold
    /// itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_th_db: Option<f64>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::one(format!("scenario JSON: {e}")))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// A representative default: 3 relays, rank 2, ρ = 0.7, mild
    /// impairments, unit-mean exponential-like optical fading, 20 dB on
    /// both hops, heterodyne detection.
    pub fn representative() -> Self {
        Scenario {
            rf: RfSection {
                relay_count: 3,
                selected_rank: 2,
                correlation: 0.7,
                avg_snr_db: 20.0,
            },
            optical: OpticalSection {
                beta1: 1.0,
                beta2: 1.0,
                k: None,
                l: None,
                omega1: None,
                omega2: None,
                detection: Detection::Heterodyne,
                avg_elec_snr_db: 20.0,
            },
            impairments: ImpairmentSection {
                kappa1: 0.1,
                kappa2: 0.1,
            },
            gamma_th_db: Some(3.0),
        }
    }

    /// Resolve to runtime configuration, converting dB fields and filling
    /// the optional optical parameters.
    pub fn resolve(&self) -> Result<LinkConfig, ConfigError> {
        let mut problems = Vec::new();

        let rf = RfHopConfig::new(
            self.rf.relay_count,
            self.rf.selected_rank,
            self.rf.correlation,
            db_to_linear(self.rf.avg_snr_db),
        )
        .map_err(|e| problems.push(format!("rf: {e}")))
        .ok();

        let o = &self.optical;
        let kl = match (o.k, o.l) {
            (Some(k), Some(l)) => Ok((k, l)),
            (None, None) => rationalize_kl(o.beta1, o.beta2, 1e-9)
                .map_err(|e| ConfigError::one(format!("optical.k/l: {e}"))),
            _ => Err(ConfigError::one(
                "optical.k and optical.l must be given together or both omitted",
            )),
        };
        let optical = match kl {
            Ok((k, l)) => OpticalHopConfig::new(
                o.beta1,
                o.beta2,
                k,
                l,
                o.omega1
                    .unwrap_or_else(|| weibull_scale_unit_mean(o.beta1)),
                o.omega2
                    .unwrap_or_else(|| weibull_scale_unit_mean(o.beta2)),
                o.detection,
                db_to_linear(o.avg_elec_snr_db),
            )
            .map_err(|e| problems.push(format!("optical: {e}")))
            .ok(),
            Err(e) => {
                problems.extend(e.problems);
                None
            }
        };

        if self.impairments.kappa1 < 0.0 {
            problems.push(format!(
                "impairments.kappa1 {} must be nonnegative",
                self.impairments.kappa1
            ));
        }
        if self.impairments.kappa2 < 0.0 {
            problems.push(format!(
                "impairments.kappa2 {} must be nonnegative",
                self.impairments.kappa2
            ));
        }
        if let Some(db) = self.gamma_th_db {
            if !db.is_finite() {
                problems.push(format!("gamma_th_db {db} must be finite"));
            }
        }

        match (rf, optical) {
            (Some(rf), Some(optical)) if problems.is_empty() => Ok(LinkConfig::new(
                rf,
                optical,
                ImpairmentProfile::new(self.impairments.kappa1, self.impairments.kappa2),
            )),
            _ => Err(ConfigError { problems }),
        }
    }

    /// Copy with both hops' average SNR set to `db` (the joint-SNR sweep
    /// axis).
    pub fn with_avg_snr_db(&self, db: f64) -> Self {
        let mut s = self.clone();
        s.rf.avg_snr_db = db;
        s.optical.avg_elec_snr_db = db;
        s
    }

    /// Outage threshold in linear units, when configured.
    pub fn gamma_th_linear(&self) -> Option<f64> {
        self.gamma_th_db.map(db_to_linear)
    }
}

/// Sweep abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Both hops' average SNR swept jointly (dB).
    AvgSnrDb,
    /// Outage threshold swept (dB); hop SNRs stay at the scenario values.
    GammaThDb,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "avg_snr_db" => Ok(SweepAxis::AvgSnrDb),
            "gamma_th_db" => Ok(SweepAxis::GammaThDb),
            other => Err(ConfigError::one(format!(
                "unknown axis '{other}' (expected avg_snr_db or gamma_th_db)"
            ))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepAxis::AvgSnrDb => "avg_snr_db",
            SweepAxis::GammaThDb => "gamma_th_db",
        };
        f.write_str(s)
    }
}

/// Quantities a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    OpClosed,
    OpQuad,
    OpMc,
    EcBound,
    EcApprox,
    EcNumeric,
    EcMc,
    Ceilings,
}

impl SweepOutput {
    pub const ALL: [SweepOutput; 8] = [
        SweepOutput::OpClosed,
        SweepOutput::OpQuad,
        SweepOutput::OpMc,
        SweepOutput::EcBound,
        SweepOutput::EcApprox,
        SweepOutput::EcNumeric,
        SweepOutput::EcMc,
        SweepOutput::Ceilings,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepOutput::OpClosed => "op_closed",
            SweepOutput::OpQuad => "op_quad",
            SweepOutput::OpMc => "op_mc",
            SweepOutput::EcBound => "ec_bound",
            SweepOutput::EcApprox => "ec_approx",
            SweepOutput::EcNumeric => "ec_numeric",
            SweepOutput::EcMc => "ec_mc",
            SweepOutput::Ceilings => "ceilings",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        SweepOutput::ALL
            .iter()
            .find(|o| o.name() == s)
            .copied()
            .ok_or_else(|| {
                ConfigError::one(format!(
                    "unknown output '{s}' (expected one of {})",
                    SweepOutput::ALL
                        .iter()
                        .map(|o| o.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }

    /// Column headers this output contributes to the CSV.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            SweepOutput::OpClosed => &["op_closed"],
            SweepOutput::OpQuad => &["op_quad"],
            SweepOutput::OpMc => &["op_mc", "op_mc_half_width"],
            SweepOutput::EcBound => &["ec_bound"],
            SweepOutput::EcApprox => &["ec_approx"],
            SweepOutput::EcNumeric => &["ec_numeric"],
            SweepOutput::EcMc => &["ec_mc", "ec_mc_half_width"],
            SweepOutput::Ceilings => &["ceiling_sndr_db", "ceiling_capacity_bps"],
        }
    }

    pub fn is_mc(self) -> bool {
        matches!(self, SweepOutput::OpMc | SweepOutput::EcMc)
    }
}

/// Grid definition for one sweep run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    /// Abscissae in dB, strictly increasing.
    pub grid: Vec<f64>,
    pub outputs: Vec<SweepOutput>,
    pub trials: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut problems = Vec::new();
        if self.grid.is_empty() {
            problems.push("grid must not be empty".to_string());
        }
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            problems.push("grid must be strictly increasing".to_string());
        }
        if self.outputs.is_empty() {
            problems.push("outputs must not be empty".to_string());
        }
        if self.outputs.iter().any(|o| o.is_mc()) && self.trials < 10_000 {
            problems.push(format!(
                "trials = {} too low: Monte Carlo outputs need at least 10000",
                self.trials
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { problems })
        }
    }

    /// Inclusive dB grid from `start:stop:step`.
    pub fn grid_from_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ConfigError> {
        if !(step > 0.0) || stop < start {
            return Err(ConfigError::one(format!(
                "bad grid range {start}:{stop}:{step}"
            )));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| start + step * i as f64).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_scenario_resolves() {
        let s = Scenario::representative();
        let cfg = s.resolve().unwrap();
        assert_eq!(cfg.rf.relay_count, 3);
        assert_eq!(cfg.optical.k, 1);
        assert_eq!(cfg.optical.l, 1);
        assert!((cfg.rf.avg_snr - 100.0).abs() < 1e-9);
        assert!((cfg.optical.omega1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let s = Scenario::representative();
        let text = s.to_json_pretty();
        let back = Scenario::from_json(&text).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn field_level_messages() {
        let mut s = Scenario::representative();
        s.rf.selected_rank = 9;
        s.impairments.kappa1 = -0.5;
        let e = s.resolve().unwrap_err();
        assert_eq!(e.problems.len(), 2);
        assert!(e.problems[0].contains("selected_rank"));
        assert!(e.problems[1].contains("kappa1"));
    }

    #[test]
    fn kl_must_come_in_pairs() {
        let mut s = Scenario::representative();
        s.optical.k = Some(1);
        let e = s.resolve().unwrap_err();
        assert!(e.problems[0].contains("together"));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{ "rf": { "relay_count": 1, "selected_rank": 1, "correlation": 1.0, "avg_snr_db": 10, "typo": 3 },
                        "optical": { "beta1": 1, "beta2": 1, "detection": "heterodyne", "avg_elec_snr_db": 10 },
                        "impairments": { "kappa1": 0, "kappa2": 0 } }"#;
        assert!(Scenario::from_json(text).is_err());
    }

    #[test]
    fn db_conversion() {
        assert!((db_to_linear(20.0) - 100.0).abs() < 1e-12);
        assert!((linear_to_db(1000.0) - 30.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_spec_validation() {
        let mut spec = SweepSpec {
            axis: SweepAxis::AvgSnrDb,
            grid: vec![0.0, 2.0, 4.0],
            outputs: vec![SweepOutput::OpClosed],
            trials: 100,
            seed: 1,
        };
        assert!(spec.validate().is_ok());
        spec.outputs.push(SweepOutput::OpMc);
        assert!(spec.validate().is_err(), "low trials with MC output");
        spec.trials = 10_000;
        assert!(spec.validate().is_ok());
        spec.outputs.clear();
        assert!(spec.validate().is_err(), "empty outputs");
        spec.outputs = vec![SweepOutput::EcBound];
        spec.grid = vec![3.0, 1.0];
        assert!(spec.validate().is_err(), "non-increasing grid");
    }

    #[test]
    fn grid_ranges() {
        let g = SweepSpec::grid_from_range(0.0, 10.0, 2.5).unwrap();
        assert_eq!(g, vec![0.0, 2.5, 5.0, 7.5, 10.0]);
        assert!(SweepSpec::grid_from_range(5.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn output_names_roundtrip() {
        for o in SweepOutput::ALL {
            assert_eq!(SweepOutput::parse(o.name()).unwrap(), o);
        }
        assert!(SweepOutput::parse("bogus").is_err());
    }
}
