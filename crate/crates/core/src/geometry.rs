//! Relative azimuth between the two scattering planes and the two detector
//! arrangements (idler counter in or perpendicular to the trajectory plane).

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorAzimuths {
    phi_i: f64,
    phi_s: f64,
}

impl DetectorAzimuths {
    /// Angles are reduced to `[0, 2π)`.
    pub fn new(phi_i: f64, phi_s: f64) -> Self {
        DetectorAzimuths {
            phi_i: reduce(phi_i),
            phi_s: reduce(phi_s),
        }
    }

    pub fn phi_i(&self) -> f64 {
        self.phi_i
    }

    pub fn phi_s(&self) -> f64 {
        self.phi_s
    }

    pub fn swapped(&self) -> Self {
        DetectorAzimuths {
            phi_i: self.phi_s,
            phi_s: self.phi_i,
        }
    }
}

fn reduce(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Difference `Δϑ_is` between the idler and signal phase-matching angles.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhaseMatching(f64);

impl PhaseMatching {
    pub const COLLINEAR: PhaseMatching = PhaseMatching(0.0);

    /// Accepts `0 ≤ Δϑ_is ≤ π/2`. The closed upper end is the limit where the
    /// minimum relative azimuth reaches 90°.
    pub fn new(delta_theta_is: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&delta_theta_is) {
            return Err(Error::domain(format!(
                "phase-matching angle difference must lie in [0, pi/2], got {delta_theta_is}"
            )));
        }
        Ok(PhaseMatching(delta_theta_is))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which way the idler counter is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrangementKind {
    /// Idler counter in the trajectory plane, `φ_i = 0`.
    #[serde(alias = "energy_param")]
    Energy,
    /// Idler counter perpendicular to the trajectory plane, `φ_i = 90°`.
    #[serde(alias = "phase_param")]
    Phase,
}

impl ArrangementKind {
    pub fn idler_azimuth(self) -> f64 {
        match self {
            ArrangementKind::Energy => 0.0,
            ArrangementKind::Phase => FRAC_PI_2,
        }
    }

    /// Signal azimuths `(φ_s at η_max, φ_s at η_min)`.
    pub fn signal_azimuths(self) -> (f64, f64) {
        match self {
            ArrangementKind::Energy => (FRAC_PI_2, 0.0),
            ArrangementKind::Phase => (0.0, FRAC_PI_2),
        }
    }
}

impl fmt::Display for ArrangementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrangementKind::Energy => "energy",
            ArrangementKind::Phase => "phase",
        })
    }
}

impl FromStr for ArrangementKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy" | "energy_param" => Ok(ArrangementKind::Energy),
            "phase" | "phase_param" => Ok(ArrangementKind::Phase),
            _ => Err(Error::Config {
                field: "arrangement",
                reason: format!("unknown arrangement `{s}` (expected energy or phase)"),
            }),
        }
    }
}

/// Angle between the idler and signal scattering planes, in `[0, π]`.
///
/// `cos η = cos φ_i cos φ_s + cos Δϑ_is sin φ_i sin φ_s`. The matching
/// `sin η` is the norm of the cross product of the two in-plane unit
/// vectors, so the angle comes from `atan2` and stays accurate where
/// `acos` loses digits (η near 0 or π).
pub fn relative_azimuth(d: &DetectorAzimuths, pm: PhaseMatching) -> f64 {
    let (si, ci) = d.phi_i.sin_cos();
    let (ss, cs) = d.phi_s.sin_cos();
    let (sd, cd) = pm.value().sin_cos();
    let cos_eta = ci * cs + cd * (si * ss);
    let sin_eta = (sd * ss).hypot(ci * cd * ss - si * cs);
    sin_eta.atan2(cos_eta)
}

/// Literal `arccos` route with the argument clamped to `[-1, 1]`.
pub fn relative_azimuth_acos(d: &DetectorAzimuths, pm: PhaseMatching) -> f64 {
    let (si, ci) = d.phi_i.sin_cos();
    let (ss, cs) = d.phi_s.sin_cos();
    let c = ci * cs + pm.value().cos() * (si * ss);
    c.clamp(-1.0, 1.0).acos()
}

/// `(η_max, η_min)` for an arrangement, evaluated through [`relative_azimuth`].
pub fn arrangement_azimuths(kind: ArrangementKind, pm: PhaseMatching) -> (f64, f64) {
    let phi_i = kind.idler_azimuth();
    let (at_max, at_min) = kind.signal_azimuths();
    (
        relative_azimuth(&DetectorAzimuths::new(phi_i, at_max), pm),
        relative_azimuth(&DetectorAzimuths::new(phi_i, at_min), pm),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const DEG_EPS: f64 = 1e-12;

    #[test]
    fn energy_arrangement_reduces_to_signal_azimuth() {
        for deg in [0.0f64, 10.0, 45.0, 90.0, 135.0, 180.0] {
            let x = deg.to_radians();
            for pm in [0.0f64, 30.0, 78.38] {
                let eta = relative_azimuth(
                    &DetectorAzimuths::new(0.0, x),
                    PhaseMatching::from_degrees(pm).unwrap(),
                );
                assert!((eta - x).abs() < 1e-7, "{deg} {pm} {eta}");
            }
        }
    }

    #[test]
    fn phase_arrangement_values() {
        let pm = PhaseMatching::from_degrees(78.38).unwrap();
        let eta = relative_azimuth(&DetectorAzimuths::new(FRAC_PI_2, FRAC_PI_2), pm);
        assert!((eta.to_degrees() - 78.38).abs() < DEG_EPS);
        let eta = relative_azimuth(&DetectorAzimuths::new(FRAC_PI_2, 0.0), pm);
        assert!((eta.to_degrees() - 90.0).abs() < DEG_EPS);
    }

    #[test]
    fn arrangements() {
        for pm in [0.0, 12.0, 81.53] {
            let (max, min) =
                arrangement_azimuths(ArrangementKind::Energy, PhaseMatching::from_degrees(pm).unwrap());
            assert!((max.to_degrees() - 90.0).abs() < DEG_EPS);
            assert!(min.abs() < DEG_EPS);
        }
        let (max, min) =
            arrangement_azimuths(ArrangementKind::Phase, PhaseMatching::from_degrees(81.53).unwrap());
        assert!((max.to_degrees() - 90.0).abs() < DEG_EPS);
        assert!((min.to_degrees() - 81.53).abs() < DEG_EPS);
        let (max, min) = arrangement_azimuths(ArrangementKind::Phase, PhaseMatching::COLLINEAR);
        assert!((max.to_degrees() - 90.0).abs() < DEG_EPS);
        assert!(min.abs() < DEG_EPS);
    }

    #[test]
    fn clamps_rounding_overshoot() {
        let eta = relative_azimuth(&DetectorAzimuths::new(1e-9, -1e-9), PhaseMatching::COLLINEAR);
        assert!(!eta.is_nan());
        let eta = relative_azimuth(
            &DetectorAzimuths::new(FRAC_PI_2, 3.0 * FRAC_PI_2),
            PhaseMatching::COLLINEAR,
        );
        assert!((eta - PI).abs() < 1e-7);
    }

    #[test]
    fn reduction_and_parse() {
        let d = DetectorAzimuths::new(-FRAC_PI_2, 5.0 * PI);
        assert!((d.phi_i() - 1.5 * PI).abs() < 1e-12);
        assert!((d.phi_s() - PI).abs() < 1e-12);
        assert!(DetectorAzimuths::new(-1e-20, 0.0).phi_i() < TAU);
        assert!(PhaseMatching::from_degrees(95.0).is_err());
        assert!(PhaseMatching::from_degrees(-1.0).is_err());
        assert_eq!("phase".parse::<ArrangementKind>().unwrap(), ArrangementKind::Phase);
        assert!("sideways".parse::<ArrangementKind>().is_err());
    }

    proptest! {
        #[test]
        fn symmetric_in_detectors(a in -10.0f64..10.0, b in -10.0f64..10.0, dt in 0.0f64..FRAC_PI_2) {
            let d = DetectorAzimuths::new(a, b);
            let pm = PhaseMatching::new(dt).unwrap();
            prop_assert!((relative_azimuth(&d, pm) - relative_azimuth(&d.swapped(), pm)).abs() <= 1e-15);
        }

        #[test]
        fn always_in_range(a in -10.0f64..10.0, b in -10.0f64..10.0, dt in 0.0f64..=FRAC_PI_2) {
            let eta = relative_azimuth(&DetectorAzimuths::new(a, b), PhaseMatching::new(dt).unwrap());
            prop_assert!((0.0..=PI).contains(&eta));
        }

        #[test]
        fn energy_arrangement_ignores_phase_matching(phi_s in 0.0f64..TAU, d1 in 0.0f64..FRAC_PI_2, d2 in 0.0f64..FRAC_PI_2) {
            let d = DetectorAzimuths::new(0.0, phi_s);
            let a = relative_azimuth(&d, PhaseMatching::new(d1).unwrap());
            let b = relative_azimuth(&d, PhaseMatching::new(d2).unwrap());
            prop_assert!((a - b).abs() <= 1e-15);
            let exact = if phi_s <= PI { phi_s } else { TAU - phi_s };
            prop_assert!((a - exact).abs() <= 1e-14);
        }

        #[test]
        fn agrees_with_acos(a in -10.0f64..10.0, b in -10.0f64..10.0, dt in 0.0f64..=FRAC_PI_2) {
            let d = DetectorAzimuths::new(a, b);
            let pm = PhaseMatching::new(dt).unwrap();
            // acos loses ~sqrt(eps) near the ends of its range
            prop_assert!((relative_azimuth(&d, pm) - relative_azimuth_acos(&d, pm)).abs() < 1e-7);
        }
    }
}
