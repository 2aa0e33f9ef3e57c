//! Azimuthal-ratio observables `N⊥/N∥` for coincidence counting with both
//! photons scattered through the same polar angle θ.
//!
//! * energy-parameterized ratio `R` (idler counter at `φ_i = 0`):
//!   cross section at η = 90° over the one at η = 0°;
//! * energy and phase-matching parameterized ratio `ρ` (`φ_i = 90°`):
//!   η = 90° over η = Δϑ_is.
//!
//! The scattering function cancels from every ratio, so all of them are
//! built from free-electron arm intensities. Φ-family ratios are the
//! reciprocals of the Ψ-family ones.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use serde::Serialize;

use crate::bell::StateFamily;
use crate::error::{Error, Result};
use crate::geometry::PhaseMatching;
use crate::grid::{argmax, linspace_step, map_indexed};
use crate::incoherent::{ia_precision, PrecisionInput};
use crate::kinematics::{BindingEnergy, PhotonEnergy};
use crate::polarimetry::{arm_intensity, check_polar, StokesVector};

/// `Σ_a ⟨I|T(θ;E_oi)M(aπ/2)|+⟩ ⟨I|T(θ;E_os)M(ψ_s + aπ/2)|s⟩`.
fn bra_ket_sum(
    theta: f64,
    e_oi: PhotonEnergy,
    e_os: PhotonEnergy,
    signal_offset: f64,
    signal: &StokesVector,
) -> Result<f64> {
    let mut sum = 0.0;
    for a in 0..2 {
        let psi = a as f64 * FRAC_PI_2;
        let idler = arm_intensity(theta, e_oi, psi, &StokesVector::PLUS)?;
        let sig = arm_intensity(theta, e_os, signal_offset + psi, signal)?;
        sum += idler * sig;
    }
    Ok(sum)
}

/// Forms `numerator / denominator` for Ψ and the flipped quotient for Φ.
/// A vanishing denominator gives `f64::INFINITY` rather than NaN.
fn form_ratio(numerator: f64, denominator: f64, family: StateFamily) -> f64 {
    let (n, d) = match family {
        StateFamily::Psi => (numerator, denominator),
        StateFamily::Phi => (denominator, numerator),
    };
    if d == 0.0 {
        if n == 0.0 {
            f64::NAN
        } else {
            f64::INFINITY
        }
    } else {
        n / d
    }
}

/// Nondegenerate energy-parameterized ratio `R_nd(θ; E_oi, E_os)`.
pub fn ratio_nd(
    theta: f64,
    e_oi: PhotonEnergy,
    e_os: PhotonEnergy,
    family: StateFamily,
) -> Result<f64> {
    let num = bra_ket_sum(theta, e_oi, e_os, 0.0, &StokesVector::PLUS)?;
    let den = bra_ket_sum(theta, e_oi, e_os, 0.0, &StokesVector::MINUS)?;
    Ok(form_ratio(num, den, family))
}

/// Degenerate ratio `R_d(θ; E_o) = (A² + B²)/(2AB)` with `A = ⟨I|T|+⟩`,
/// `B = ⟨I|T|−⟩`.
pub fn ratio_d(theta: f64, e_o: PhotonEnergy, family: StateFamily) -> Result<f64> {
    let a = arm_intensity(theta, e_o, 0.0, &StokesVector::PLUS)?;
    let b = arm_intensity(theta, e_o, 0.0, &StokesVector::MINUS)?;
    Ok(form_ratio(a * a + b * b, 2.0 * a * b, family))
}

/// Energy and phase-matching parameterized ratio `ρ_nd(θ; E_oi, E_os, Δϑ_is)`.
pub fn rho_nd(
    theta: f64,
    e_oi: PhotonEnergy,
    e_os: PhotonEnergy,
    pm: PhaseMatching,
    family: StateFamily,
) -> Result<f64> {
    let num = bra_ket_sum(theta, e_oi, e_os, 0.0, &StokesVector::PLUS)?;
    let den = bra_ket_sum(theta, e_oi, e_os, pm.value(), &StokesVector::MINUS)?;
    Ok(form_ratio(num, den, family))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioKind {
    /// `R`, idler counter in the trajectory plane.
    Energy,
    /// `ρ`, idler counter perpendicular to the trajectory plane.
    Phase(PhaseMatching),
}

/// Everything a ratio depends on except θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioParams {
    pub e_oi: PhotonEnergy,
    pub e_os: PhotonEnergy,
    pub family: StateFamily,
    pub kind: RatioKind,
}

impl RatioParams {
    pub fn degenerate(e_o: PhotonEnergy, family: StateFamily) -> Self {
        RatioParams {
            e_oi: e_o,
            e_os: e_o,
            family,
            kind: RatioKind::Energy,
        }
    }

    pub fn nondegenerate(e_oi: PhotonEnergy, e_os: PhotonEnergy, family: StateFamily) -> Self {
        RatioParams {
            e_oi,
            e_os,
            family,
            kind: RatioKind::Energy,
        }
    }

    pub fn with_phase_matching(self, pm: PhaseMatching) -> Self {
        RatioParams {
            kind: RatioKind::Phase(pm),
            ..self
        }
    }

    /// Dispatches to [`ratio_d`], [`ratio_nd`] or [`rho_nd`].
    pub fn eval(&self, theta: f64) -> Result<f64> {
        match self.kind {
            RatioKind::Energy if self.e_oi == self.e_os => ratio_d(theta, self.e_oi, self.family),
            RatioKind::Energy => ratio_nd(theta, self.e_oi, self.e_os, self.family),
            RatioKind::Phase(pm) => rho_nd(theta, self.e_oi, self.e_os, pm, self.family),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioResult {
    pub theta: f64,
    pub value: f64,
    pub half_width: f64,
}

impl RatioResult {
    /// Set when the denominator cross section vanished.
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

/// Ratio with its IA band, `±(√2/2)·value·A`.
pub fn ratio_with_band(params: &RatioParams, theta: f64, e_b: BindingEnergy) -> Result<RatioResult> {
    let value = params.eval(theta)?;
    let a = ia_precision(&PrecisionInput {
        e_oi: params.e_oi,
        e_os: params.e_os,
        theta_i: theta,
        theta_s: theta,
        e_b,
    })?;
    Ok(RatioResult {
        theta,
        value,
        half_width: FRAC_1_SQRT_2 * value * a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakReport {
    pub theta_star: f64,
    pub value_star: f64,
    /// Final grid spacing, quoted as the uncertainty on `theta_star`.
    pub grid_step: f64,
}

/// Grid search for the maximum of `f` on `[lo, hi]` (radians): a coarse scan,
/// then a fine scan over one coarse step either side of the coarse argmax.
/// Ties resolve to the smallest θ.
pub fn peak_scan<F>(f: F, range: (f64, f64), coarse_step: f64, refine_step: f64) -> Result<PeakReport>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let (lo, hi) = range;
    if !(lo < hi) {
        return Err(Error::domain(format!("empty scan range [{lo}, {hi}]")));
    }
    check_polar(lo)?;
    check_polar(hi)?;
    if !(coarse_step > 0.0 && refine_step > 0.0) {
        return Err(Error::domain("scan steps must be > 0"));
    }

    let coarse = linspace_step(lo, hi, coarse_step);
    let (theta_c, _) = best_on(&f, &coarse)?;

    let fine_lo = (theta_c - coarse_step).max(lo);
    let fine_hi = (theta_c + coarse_step).min(hi);
    let fine = linspace_step(fine_lo, fine_hi, refine_step);
    let (theta_star, value_star) = best_on(&f, &fine)?;

    Ok(PeakReport {
        theta_star,
        value_star,
        grid_step: refine_step.min(coarse_step),
    })
}

fn best_on<F>(f: &F, grid: &[f64]) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let values = map_indexed(grid.len(), |j| f(grid[j]))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    let j = argmax(&values).ok_or_else(|| Error::domain("ratio undefined over the whole scan"))?;
    Ok((grid[j], values[j]))
}
