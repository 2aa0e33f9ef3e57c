//! Run configuration shared by every subcommand. Serialized as a flat JSON
//! object whose keys are the field names below.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bell::BellState;
use crate::error::{Error, Result};
use crate::geometry::{ArrangementKind, PhaseMatching};
use crate::incoherent::{load_scattering_table_file, ScatteringFunctionTable};
use crate::kinematics::{kev_to_mc2, BindingEnergy, PhotonEnergy, HELIUM_BINDING_KEV};
use crate::ratios::{RatioKind, RatioParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config {
                field: "output_format",
                reason: format!("unknown format `{s}` (expected csv or json)"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub state: BellState,
    pub e_oi_kev: f64,
    pub e_os_kev: f64,
    pub e_b_kev: f64,
    pub element_z: u32,
    /// CSV scattering-function table; free-electron `S ≡ 1` when absent.
    pub scattering_table_path: Option<PathBuf>,
    pub arrangement: ArrangementKind,
    pub delta_theta_is_deg: f64,
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
    pub theta_step_deg: f64,
    /// Fine step for `peak`; `theta_step_deg` is the coarse step.
    pub refine_step_deg: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            state: BellState::PsiPlus,
            e_oi_kev: 12.5,
            e_os_kev: 12.5,
            e_b_kev: HELIUM_BINDING_KEV,
            element_z: 2,
            scattering_table_path: None,
            arrangement: ArrangementKind::Energy,
            delta_theta_is_deg: 0.0,
            theta_min_deg: 1.0,
            theta_max_deg: 179.0,
            theta_step_deg: 0.1,
            refine_step_deg: 0.001,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Config {
        field,
        reason: reason.into(),
    }
}

impl RunConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s)?;
        Ok(cfg)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("e_oi_kev", self.e_oi_kev), ("e_os_kev", self.e_os_kev)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(field, format!("must be a positive energy, got {v}")));
            }
        }
        if !(self.e_b_kev >= 0.0 && self.e_b_kev.is_finite()) {
            return Err(invalid("e_b_kev", format!("must be >= 0, got {}", self.e_b_kev)));
        }
        if self.e_b_kev >= self.e_oi_kev.min(self.e_os_kev) {
            return Err(invalid(
                "e_b_kev",
                "binding energy must be below both incident energies",
            ));
        }
        if self.element_z == 0 {
            return Err(invalid("element_z", "atomic number must be >= 1"));
        }
        if !(0.0..=90.0).contains(&self.delta_theta_is_deg) {
            return Err(invalid(
                "delta_theta_is_deg",
                format!("must lie in [0, 90], got {}", self.delta_theta_is_deg),
            ));
        }
        if !(0.0..=180.0).contains(&self.theta_min_deg) {
            return Err(invalid("theta_min_deg", "must lie in [0, 180]"));
        }
        if !(0.0..=180.0).contains(&self.theta_max_deg) {
            return Err(invalid("theta_max_deg", "must lie in [0, 180]"));
        }
        if !(self.theta_min_deg < self.theta_max_deg) {
            return Err(invalid("theta_min_deg", "must be below theta_max_deg"));
        }
        if !(self.theta_step_deg > 0.0) {
            return Err(invalid("theta_step_deg", "must be > 0"));
        }
        if !(self.refine_step_deg > 0.0) {
            return Err(invalid("refine_step_deg", "must be > 0"));
        }
        Ok(())
    }

    pub fn e_oi(&self) -> Result<PhotonEnergy> {
        kev_to_mc2(self.e_oi_kev)
    }

    pub fn e_os(&self) -> Result<PhotonEnergy> {
        kev_to_mc2(self.e_os_kev)
    }

    pub fn binding(&self) -> Result<BindingEnergy> {
        BindingEnergy::from_kev(self.e_b_kev)
    }

    pub fn phase_matching(&self) -> Result<PhaseMatching> {
        PhaseMatching::from_degrees(self.delta_theta_is_deg)
    }

    pub fn ratio_params(&self) -> Result<RatioParams> {
        let kind = match self.arrangement {
            ArrangementKind::Energy => RatioKind::Energy,
            ArrangementKind::Phase => RatioKind::Phase(self.phase_matching()?),
        };
        Ok(RatioParams {
            e_oi: self.e_oi()?,
            e_os: self.e_os()?,
            family: self.state.family(),
            kind,
        })
    }

    pub fn load_table(&self) -> Result<ScatteringFunctionTable> {
        match &self.scattering_table_path {
            Some(p) => load_scattering_table_file(p, self.element_z),
            None => Ok(ScatteringFunctionTable::free_electron()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let cfg = RunConfig {
            state: BellState::PhiMinus,
            arrangement: ArrangementKind::Phase,
            delta_theta_is_deg: 81.53,
            scattering_table_path: Some("he.csv".into()),
            ..RunConfig::default()
        };
        let back = RunConfig::from_json_str(&cfg.to_json_pretty().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn partial_json_fills_defaults() {
        let cfg = RunConfig::from_json_str(r#"{"state": "phi+", "e_oi_kev": 10.0}"#).unwrap();
        assert_eq!(cfg.state, BellState::PhiPlus);
        assert_eq!(cfg.e_oi_kev, 10.0);
        assert_eq!(cfg.e_os_kev, 12.5);
        assert!(RunConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
        assert!(RunConfig::from_json_str(r#"{"state": "chi"}"#).is_err());
    }

    #[test]
    fn validation_names_field() {
        let cases: Vec<(RunConfig, &str)> = vec![
            (RunConfig { e_oi_kev: 0.0, ..Default::default() }, "e_oi_kev"),
            (RunConfig { e_b_kev: -1.0, ..Default::default() }, "e_b_kev"),
            (RunConfig { e_b_kev: 20.0, ..Default::default() }, "e_b_kev"),
            (RunConfig { theta_min_deg: 90.0, theta_max_deg: 80.0, ..Default::default() }, "theta_min_deg"),
            (RunConfig { theta_step_deg: 0.0, ..Default::default() }, "theta_step_deg"),
            (RunConfig { delta_theta_is_deg: 120.0, ..Default::default() }, "delta_theta_is_deg"),
            (RunConfig { element_z: 0, ..Default::default() }, "element_z"),
        ];
        for (cfg, expected) in cases {
            match cfg.validate() {
                Err(Error::Config { field, .. }) => assert_eq!(field, expected),
                other => panic!("expected config error on {expected}, got {other:?}"),
            }
        }
    }
}
