//! Bound-electron corrections: the incoherent scattering function `S` and
//! the impulse-approximation precision band.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::bell::{ddxsec_kn, BellState, JointKinematics};
use crate::error::{Error, Result};
use crate::kinematics::{scattered_energy_bound, BindingEnergy, PhotonEnergy};

/// hc in keV·Å.
pub const HC_KEV_ANGSTROM: f64 = 12.39842;

pub const TABLE_HEADER: [&str; 2] = ["x_inv_angstrom", "s"];

/// Momentum-transfer parameter `x = sin(θ/2)/λ` in Å⁻¹.
pub fn momentum_transfer(theta: f64, e_o: PhotonEnergy) -> f64 {
    (0.5 * theta).sin() * e_o.kev() / HC_KEV_ANGSTROM
}

/// Tabulated incoherent scattering function `S(x)` for one element.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringFunctionTable {
    element_z: u32,
    x: Vec<f64>,
    s: Vec<f64>,
    free_electron: bool,
}

impl ScatteringFunctionTable {
    /// Builds a table from `(x, s)` samples, checking ordering and bounds.
    /// Errors report 1-based sample positions as line numbers offset by the
    /// header.
    pub fn new(element_z: u32, rows: &[(f64, f64)]) -> Result<Self> {
        let lines: Vec<u64> = (2..).take(rows.len()).collect();
        Self::from_rows(element_z, rows, &lines)
    }

    fn from_rows(element_z: u32, rows: &[(f64, f64)], lines: &[u64]) -> Result<Self> {
        if element_z == 0 {
            return Err(Error::Config {
                field: "element_z",
                reason: "atomic number must be >= 1".into(),
            });
        }
        if rows.is_empty() {
            return Err(Error::Table {
                line: 1,
                reason: "table has no data rows".into(),
            });
        }
        let z = element_z as f64;
        for (idx, &(x, s)) in rows.iter().enumerate() {
            let line = lines[idx];
            if !x.is_finite() || !s.is_finite() {
                return Err(Error::Table {
                    line,
                    reason: "non-finite value".into(),
                });
            }
            if !(0.0..=z).contains(&s) {
                return Err(Error::Table {
                    line,
                    reason: format!("s = {s} outside [0, Z = {element_z}]"),
                });
            }
            if idx > 0 {
                let (px, ps) = rows[idx - 1];
                if x <= px {
                    return Err(Error::Table {
                        line,
                        reason: format!("x = {x} not strictly greater than previous x = {px}"),
                    });
                }
                if s < ps {
                    return Err(Error::Table {
                        line,
                        reason: format!("s = {s} decreases from previous s = {ps}"),
                    });
                }
            }
        }
        Ok(ScatteringFunctionTable {
            element_z,
            x: rows.iter().map(|r| r.0).collect(),
            s: rows.iter().map(|r| r.1).collect(),
            free_electron: false,
        })
    }

    /// `S ≡ 1`: scattering from a single free electron.
    pub fn free_electron() -> Self {
        ScatteringFunctionTable {
            element_z: 1,
            x: vec![0.0],
            s: vec![1.0],
            free_electron: true,
        }
    }

    pub fn element_z(&self) -> u32 {
        self.element_z
    }

    pub fn is_free_electron(&self) -> bool {
        self.free_electron
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.s.iter().copied())
    }

    /// Piecewise-linear `S(x)`, clamped to the end values outside the table.
    pub fn interpolate(&self, x: f64) -> f64 {
        let n = self.x.len();
        if x <= self.x[0] {
            return self.s[0];
        }
        if x >= self.x[n - 1] {
            return self.s[n - 1];
        }
        // first index with x_j > x; 1 <= j <= n-1 here
        let j = self.x.partition_point(|&xj| xj <= x);
        let (x0, x1) = (self.x[j - 1], self.x[j]);
        let (s0, s1) = (self.s[j - 1], self.s[j]);
        s0 + (s1 - s0) * (x - x0) / (x1 - x0)
    }
}

/// Parses a scattering-function CSV (`x_inv_angstrom,s` header) for element `z`.
pub fn load_scattering_table<R: Read>(source: R, element_z: u32) -> Result<ScatteringFunctionTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let header = rdr.headers().map_err(|e| Error::Table {
        line: 1,
        reason: e.to_string(),
    })?;
    if header.iter().collect::<Vec<_>>() != TABLE_HEADER {
        return Err(Error::Table {
            line: 1,
            reason: format!("expected header `{}`", TABLE_HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Table {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64> {
            let raw = rec.get(i).ok_or_else(|| Error::Table {
                line,
                reason: format!("expected 2 fields, found {}", rec.len()),
            })?;
            raw.parse::<f64>().map_err(|_| Error::Table {
                line,
                reason: format!("`{raw}` is not a decimal number"),
            })
        };
        if rec.len() != 2 {
            return Err(Error::Table {
                line,
                reason: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        rows.push((field(0)?, field(1)?));
        lines.push(line);
    }
    ScatteringFunctionTable::from_rows(element_z, &rows, &lines)
}

pub fn load_scattering_table_file(path: &Path, element_z: u32) -> Result<ScatteringFunctionTable> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    load_scattering_table(std::io::BufReader::new(f), element_z)
}

/// Per-arm factor `S(θ; E_o, Z)`.
pub fn evaluate_s(table: &ScatteringFunctionTable, theta: f64, e_o: PhotonEnergy) -> f64 {
    table.interpolate(momentum_transfer(theta, e_o))
}

/// Klein–Nishina cross section scaled by the factorized per-arm `S` values.
pub fn incoherent_ddxsec(
    state: BellState,
    jk: &JointKinematics,
    table: &ScatteringFunctionTable,
) -> Result<f64> {
    let kn = ddxsec_kn(state, jk)?;
    Ok(kn * evaluate_s(table, jk.theta_i, jk.e_oi) * evaluate_s(table, jk.theta_s, jk.e_os))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionInput {
    pub e_oi: PhotonEnergy,
    pub e_os: PhotonEnergy,
    pub theta_i: f64,
    pub theta_s: f64,
    pub e_b: BindingEnergy,
}

impl PrecisionInput {
    pub fn from_kinematics(jk: &JointKinematics, e_b: BindingEnergy) -> Self {
        PrecisionInput {
            e_oi: jk.e_oi,
            e_os: jk.e_os,
            theta_i: jk.theta_i,
            theta_s: jk.theta_s,
            e_b,
        }
    }
}

/// Impulse-approximation fractional precision: the per-arm orders
/// `[E_b/(E_o − E)]²` added in quadrature.
pub fn ia_precision(p: &PrecisionInput) -> Result<f64> {
    let e_i = scattered_energy_bound(p.e_oi, p.e_b, p.theta_i)?;
    let e_s = scattered_energy_bound(p.e_os, p.e_b, p.theta_s)?;
    let eb = p.e_b.value();
    let arm = |e_o: PhotonEnergy, e: PhotonEnergy| {
        let d = e_o.value() - e.value();
        eb * eb / (d * d)
    };
    let (a_i, a_s) = (arm(p.e_oi, e_i), arm(p.e_os, e_s));
    Ok((a_i * a_i + a_s * a_s).sqrt())
}

/// Central value with a symmetric half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub central: f64,
    pub half_width: f64,
}

/// Incoherent cross section with its IA band; the half-width is half of
/// `σ·A`.
pub fn xsec_with_band(
    state: BellState,
    jk: &JointKinematics,
    table: &ScatteringFunctionTable,
    e_b: BindingEnergy,
) -> Result<Band> {
    let central = incoherent_ddxsec(state, jk, table)?;
    let a = ia_precision(&PrecisionInput::from_kinematics(jk, e_b))?;
    Ok(Band {
        central,
        half_width: 0.5 * central * a,
    })
}
