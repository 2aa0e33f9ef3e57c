//! Scan, peak and figure-preset commands behind the `compton-bell` binary.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bell::{BellState, JointKinematics};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::geometry::{arrangement_azimuths, ArrangementKind};
use crate::grid::{linspace_step, map_indexed};
use crate::incoherent::{ia_precision, xsec_with_band, PrecisionInput, ScatteringFunctionTable};
use crate::output::{number, Table};
use crate::ratios::{peak_scan, ratio_with_band};

pub const XSEC_COLUMNS: [&str; 5] = [
    "theta_deg",
    "xsec_eta_max",
    "xsec_eta_min",
    "half_width_max",
    "half_width_min",
];
pub const RATIO_COLUMNS: [&str; 3] = ["theta_deg", "ratio", "half_width"];

fn theta_grid_deg(cfg: &RunConfig) -> Vec<f64> {
    linspace_step(cfg.theta_min_deg, cfg.theta_max_deg, cfg.theta_step_deg)
}

fn table_label(cfg: &RunConfig, table: &ScatteringFunctionTable) -> String {
    match (&cfg.scattering_table_path, table.is_free_electron()) {
        (Some(p), false) => format!("{} (Z = {})", p.display(), table.element_z()),
        _ => "free-electron (S = 1); absolute magnitudes are Klein-Nishina values".into(),
    }
}

fn metadata(cfg: &RunConfig, kind: &str, extra: Vec<(String, String)>) -> Vec<(String, String)> {
    let mut m = vec![
        ("observable".to_string(), kind.to_string()),
        ("state".to_string(), cfg.state.to_string()),
        ("e_oi_kev".to_string(), cfg.e_oi_kev.to_string()),
        ("e_os_kev".to_string(), cfg.e_os_kev.to_string()),
        ("e_b_kev".to_string(), cfg.e_b_kev.to_string()),
        ("arrangement".to_string(), cfg.arrangement.to_string()),
        ("delta_theta_is_deg".to_string(), cfg.delta_theta_is_deg.to_string()),
    ];
    m.extend(extra);
    m
}

/// Incoherent cross sections at the arrangement's `η_max` and `η_min`, with
/// their IA half-widths, in r₀⁴ units.
pub fn cmd_xsec_scan(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let table = cfg.load_table()?;
    let (e_oi, e_os, e_b) = (cfg.e_oi()?, cfg.e_os()?, cfg.binding()?);
    let (eta_max, eta_min) = arrangement_azimuths(cfg.arrangement, cfg.phase_matching()?);

    let grid = theta_grid_deg(cfg);
    let rows = map_indexed(grid.len(), |j| -> Result<Vec<f64>> {
        let theta = grid[j].to_radians();
        let at = |eta| -> Result<_> {
            let jk = JointKinematics::coplanar_pair(theta, eta, e_oi, e_os)?;
            xsec_with_band(cfg.state, &jk, &table, e_b)
        };
        let (hi, lo) = (at(eta_max)?, at(eta_min)?);
        Ok(vec![grid[j], hi.central, lo.central, hi.half_width, lo.half_width])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let extra = vec![
        ("scattering_table".to_string(), table_label(cfg, &table)),
        ("eta_max_deg".to_string(), format!("{:.6}", eta_max.to_degrees())),
        ("eta_min_deg".to_string(), format!("{:.6}", eta_min.to_degrees())),
        ("units".to_string(), "r0^4".to_string()),
    ];
    Ok(Table {
        metadata: metadata(cfg, "incoherent double-differential cross section", extra),
        columns: XSEC_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

/// Azimuthal ratio `R` (energy arrangement) or `ρ` (phase arrangement) with
/// its IA half-width.
pub fn cmd_ratio_scan(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let params = cfg.ratio_params()?;
    let e_b = cfg.binding()?;
    let grid = theta_grid_deg(cfg);
    let rows = map_indexed(grid.len(), |j| -> Result<Vec<f64>> {
        let r = ratio_with_band(&params, grid[j].to_radians(), e_b)?;
        Ok(vec![grid[j], r.value, r.half_width])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let name = match cfg.arrangement {
        ArrangementKind::Energy => "azimuthal ratio R (eta 90 deg / eta 0 deg)",
        ArrangementKind::Phase => "azimuthal ratio rho (eta 90 deg / eta delta_theta_is)",
    };
    Ok(Table {
        metadata: metadata(cfg, name, vec![]),
        columns: RATIO_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakRecord {
    pub theta_star_deg: f64,
    pub value: f64,
    pub half_width: f64,
    pub grid_step_deg: f64,
}

impl PeakRecord {
    /// Pretty JSON with values rounded to nine significant digits.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Rounded {
            theta_star_deg: serde_json::Value,
            value: serde_json::Value,
            half_width: serde_json::Value,
            grid_step_deg: serde_json::Value,
        }
        let r = Rounded {
            theta_star_deg: number(self.theta_star_deg),
            value: number(self.value),
            half_width: number(self.half_width),
            grid_step_deg: number(self.grid_step_deg),
        };
        format!("{}\n", serde_json::to_string_pretty(&r).expect("json value serializes"))
    }
}

/// Peak of the configured ratio over `[theta_min, theta_max]`, coarse step
/// `theta_step_deg`, refined at `refine_step_deg`.
pub fn cmd_peak(cfg: &RunConfig) -> Result<PeakRecord> {
    cfg.validate()?;
    let params = cfg.ratio_params()?;
    let e_b = cfg.binding()?;
    let report = peak_scan(
        |t| params.eval(t),
        (cfg.theta_min_deg.to_radians(), cfg.theta_max_deg.to_radians()),
        cfg.theta_step_deg.to_radians(),
        cfg.refine_step_deg.to_radians(),
    )?;
    let a = ia_precision(&PrecisionInput {
        e_oi: params.e_oi,
        e_os: params.e_os,
        theta_i: report.theta_star,
        theta_s: report.theta_star,
        e_b,
    })?;
    Ok(PeakRecord {
        theta_star_deg: report.theta_star.to_degrees(),
        value: report.value_star,
        half_width: FRAC_1_SQRT_2 * report.value_star * a,
        grid_step_deg: report.grid_step.to_degrees(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureName {
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig6,
}

impl FigureName {
    pub const ALL: [FigureName; 5] = [
        FigureName::Fig3a,
        FigureName::Fig3b,
        FigureName::Fig4a,
        FigureName::Fig4b,
        FigureName::Fig6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::Fig3a => "fig3a",
            FigureName::Fig3b => "fig3b",
            FigureName::Fig4a => "fig4a",
            FigureName::Fig4b => "fig4b",
            FigureName::Fig6 => "fig6",
        }
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    XsecScan,
    RatioScan,
}

/// One CSV produced by a figure preset. A file built from several configs
/// holds `theta_deg` followed by each config's columns, suffixed with
/// `column_suffixes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureOutput {
    pub file: String,
    pub command: Command,
    pub description: String,
    pub configs: Vec<RunConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub column_suffixes: Vec<String>,
}

/// Sidecar JSON written next to a figure's CSVs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureManifest {
    pub figure: FigureName,
    pub outputs: Vec<FigureOutput>,
}

const FIG_THETA_STEP_DEG: f64 = 0.01;

fn preset(state: BellState, e_oi_kev: f64, e_os_kev: f64) -> RunConfig {
    RunConfig {
        state,
        e_oi_kev,
        e_os_kev,
        theta_min_deg: 1.0,
        theta_max_deg: 179.0,
        theta_step_deg: FIG_THETA_STEP_DEG,
        ..RunConfig::default()
    }
}

fn phase_preset(delta_deg: f64) -> RunConfig {
    RunConfig {
        arrangement: ArrangementKind::Phase,
        delta_theta_is_deg: delta_deg,
        ..preset(BellState::PhiPlus, 10.0, 15.0)
    }
}

fn single(file: &str, command: Command, description: &str, cfg: RunConfig) -> FigureOutput {
    FigureOutput {
        file: file.to_string(),
        command,
        description: description.to_string(),
        configs: vec![RunConfig {
            output_format: OutputFormat::Csv,
            output_path: Some(PathBuf::from(file)),
            ..cfg
        }],
        column_suffixes: vec![],
    }
}

/// The preset configuration(s) for a figure. Every preset uses helium's
/// K-shell binding energy (0.0547 keV) for the precision band.
pub fn figure_manifest(name: FigureName) -> FigureManifest {
    use Command::*;
    let outputs = match name {
        FigureName::Fig3a => vec![single(
            "fig3a.csv",
            XsecScan,
            "psi cross sections at eta 90 and 0 deg, degenerate 12.5 keV pair, phi_i = 0",
            preset(BellState::PsiPlus, 12.5, 12.5),
        )],
        FigureName::Fig3b => vec![single(
            "fig3b.csv",
            XsecScan,
            "psi cross sections at eta 90 and 0 deg, idler 10 keV (0.8 E_o), signal 15 keV (1.2 E_o), phi_i = 0",
            preset(BellState::PsiPlus, 10.0, 15.0),
        )],
        FigureName::Fig4a => vec![single(
            "fig4a.csv",
            RatioScan,
            "energy-parameterized ratio R_d for psi, degenerate 12.5 keV",
            preset(BellState::PsiPlus, 12.5, 12.5),
        )],
        FigureName::Fig4b => vec![
            single(
                "fig4b_psi.csv",
                RatioScan,
                "energy-parameterized ratio R_nd for psi, 10 / 15 keV",
                preset(BellState::PsiPlus, 10.0, 15.0),
            ),
            single(
                "fig4b_phi.csv",
                RatioScan,
                "energy-parameterized ratio R_nd for phi, 10 / 15 keV",
                preset(BellState::PhiPlus, 10.0, 15.0),
            ),
        ],
        FigureName::Fig6 => {
            let deltas = [78.38, 81.53];
            let ratio = FigureOutput {
                file: "fig6a.csv".into(),
                command: RatioScan,
                description: "phase-matching parameterized ratio rho_nd for phi, 10 / 15 keV, phi_i = 90 deg".into(),
                configs: deltas.iter().map(|&d| phase_preset(d)).collect(),
                column_suffixes: deltas.iter().map(|d| format!("_dtheta_{d}")).collect(),
            };
            vec![
                ratio,
                single(
                    "fig6b.csv",
                    XsecScan,
                    "phi cross sections at eta 90 deg and eta = delta_theta_is = 78.38 deg",
                    phase_preset(78.38),
                ),
                single(
                    "fig6c.csv",
                    XsecScan,
                    "phi cross sections at eta 90 deg and eta = delta_theta_is = 81.53 deg",
                    phase_preset(81.53),
                ),
            ]
        }
    };
    FigureManifest {
        figure: name,
        outputs,
    }
}

pub fn run_command(command: Command, cfg: &RunConfig) -> Result<Table> {
    match command {
        Command::XsecScan => cmd_xsec_scan(cfg),
        Command::RatioScan => cmd_ratio_scan(cfg),
    }
}

/// Evaluates one manifest entry, merging multi-config outputs column-wise.
pub fn render_output(out: &FigureOutput) -> Result<Table> {
    let mut tables = out
        .configs
        .iter()
        .map(|c| run_command(out.command, c))
        .collect::<Result<Vec<_>>>()?;
    if tables.len() == 1 {
        return Ok(tables.pop().expect("one table"));
    }
    let first = &tables[0];
    let mut columns = vec![first.columns[0].clone()];
    let mut metadata = vec![];
    for (t, suffix) in tables.iter().zip(&out.column_suffixes) {
        columns.extend(t.columns[1..].iter().map(|c| format!("{c}{suffix}")));
        metadata.extend(t.metadata.iter().map(|(k, v)| (format!("{k}{suffix}"), v.clone())));
    }
    let rows = (0..first.rows.len())
        .map(|i| {
            let mut row = vec![first.rows[i][0]];
            for t in &tables {
                row.extend_from_slice(&t.rows[i][1..]);
            }
            row
        })
        .collect();
    Ok(Table {
        metadata,
        columns,
        rows,
    })
}

/// Writes a figure's CSVs and its `<name>.json` manifest into `out_dir`.
/// Returns the written paths, manifest last.
pub fn cmd_figure(name: FigureName, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let manifest = figure_manifest(name);
    let mut written = Vec::new();
    for out in &manifest.outputs {
        let path = out_dir.join(&out.file);
        let text = render_output(out)?.to_csv()?;
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    let path = out_dir.join(format!("{name}.json"));
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}
