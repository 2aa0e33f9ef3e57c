//! Double-differential Klein–Nishina cross sections for Compton scattering
//! of both photons of a polarization-entangled Bell pair.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::PhotonEnergy;
use crate::polarimetry::{arm_intensity, check_polar, StokesVector};

/// The four maximally entangled two-photon polarization states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellState {
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
}

/// Cross-polarized (Ψ) or parallel-polarized (Φ) pair. The ± members of a
/// family differ only by a phase and share every cross section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateFamily {
    Psi,
    Phi,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PhiPlus,
        BellState::PhiMinus,
    ];

    pub fn family(self) -> StateFamily {
        match self {
            BellState::PsiPlus | BellState::PsiMinus => StateFamily::Psi,
            BellState::PhiPlus | BellState::PhiMinus => StateFamily::Phi,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        }
    }
}

impl StateFamily {
    /// Polarization the signal photon carries when the idler is `|+⟩`.
    pub fn signal_partner(self) -> StokesVector {
        match self {
            StateFamily::Psi => StokesVector::MINUS,
            StateFamily::Phi => StokesVector::PLUS,
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi+" | "psiplus" | "psi_plus" => Ok(BellState::PsiPlus),
            "psi-" | "psiminus" | "psi_minus" => Ok(BellState::PsiMinus),
            "phi+" | "phiplus" | "phi_plus" => Ok(BellState::PhiPlus),
            "phi-" | "phiminus" | "phi_minus" => Ok(BellState::PhiMinus),
            _ => Err(Error::Config {
                field: "state",
                reason: format!("unknown Bell state `{s}` (expected psi+, psi-, phi+, phi-)"),
            }),
        }
    }
}

/// Angles and incident energies of a coincidence event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointKinematics {
    pub theta_i: f64,
    pub theta_s: f64,
    /// Relative azimuth between the two scattering planes.
    pub eta: f64,
    pub e_oi: PhotonEnergy,
    pub e_os: PhotonEnergy,
}

impl JointKinematics {
    pub fn new(
        theta_i: f64,
        theta_s: f64,
        eta: f64,
        e_oi: PhotonEnergy,
        e_os: PhotonEnergy,
    ) -> Result<Self> {
        let jk = JointKinematics {
            theta_i,
            theta_s,
            eta,
            e_oi,
            e_os,
        };
        jk.validate()?;
        Ok(jk)
    }

    /// Both photons scattered through the same polar angle.
    pub fn coplanar_pair(theta: f64, eta: f64, e_oi: PhotonEnergy, e_os: PhotonEnergy) -> Result<Self> {
        Self::new(theta, theta, eta, e_oi, e_os)
    }

    pub fn with_eta(self, eta: f64) -> Self {
        JointKinematics { eta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_polar(self.theta_i)?;
        check_polar(self.theta_s)?;
        if !(0.0..=PI).contains(&self.eta) {
            return Err(Error::domain(format!(
                "relative azimuth must lie in [0, pi], got {}",
                self.eta
            )));
        }
        self.e_oi.require_incident()?;
        self.e_os.require_incident()?;
        Ok(())
    }
}

/// Klein–Nishina double-differential cross section in r₀⁴ units.
///
/// Literal two-term sum over `a ∈ {0, 1}`: the idler arm sees `M(aπ/2)|+⟩`
/// and the signal arm `M(η + aπ/2)|s₂⟩`, with `s₂ = |−⟩` for Ψ and `|+⟩`
/// for Φ.
pub fn ddxsec_kn(state: BellState, jk: &JointKinematics) -> Result<f64> {
    let partner = state.family().signal_partner();
    let mut sum = 0.0;
    for a in 0..2 {
        let offset = a as f64 * FRAC_PI_2;
        let idler = arm_intensity(jk.theta_i, jk.e_oi, offset, &StokesVector::PLUS)?;
        let signal = arm_intensity(jk.theta_s, jk.e_os, jk.eta + offset, &partner)?;
        sum += idler * signal;
    }
    Ok(sum / 8.0)
}

/// Half the product of unpolarized single-photon Klein–Nishina cross
/// sections, in r₀⁴ units. Independent of η.
pub fn kn_product(jk: &JointKinematics) -> Result<f64> {
    let idler = arm_intensity(jk.theta_i, jk.e_oi, 0.0, &StokesVector::UNPOLARIZED)?;
    let signal = arm_intensity(jk.theta_s, jk.e_os, 0.0, &StokesVector::UNPOLARIZED)?;
    Ok(0.5 * idler * signal)
}
