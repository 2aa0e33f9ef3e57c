//! Photon energy bookkeeping and the Compton formula, with and without the
//! binding-energy limit on the highest scattered energy.
//!
//! All energies are dimensionless, in units of the electron rest energy
//! (mc² = 511 keV). All angles are radians.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Electron rest energy in keV; the unit of every [`PhotonEnergy`].
pub const MC2_KEV: f64 = 511.0;

/// Helium K-shell binding energy in keV.
pub const HELIUM_BINDING_KEV: f64 = 0.0547;

/// Photon energy in units of mc².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhotonEnergy(f64);

impl PhotonEnergy {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::domain(format!(
                "photon energy must be finite and >= 0, got {value}"
            )));
        }
        Ok(PhotonEnergy(value))
    }

    pub fn from_kev(e_kev: f64) -> Result<Self> {
        kev_to_mc2(e_kev)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn kev(self) -> f64 {
        self.0 * MC2_KEV
    }

    /// Errors unless the energy is strictly positive, as required of an incident beam.
    pub(crate) fn require_incident(self) -> Result<Self> {
        if self.0 > 0.0 {
            Ok(self)
        } else {
            Err(Error::domain(format!(
                "incident photon energy must be > 0, got {}",
                self.0
            )))
        }
    }
}

/// Electron binding energy in units of mc².
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BindingEnergy(f64);

impl BindingEnergy {
    pub const FREE: BindingEnergy = BindingEnergy(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::domain(format!(
                "binding energy must be finite and >= 0, got {value}"
            )));
        }
        Ok(BindingEnergy(value))
    }

    pub fn from_kev(e_kev: f64) -> Result<Self> {
        if !(e_kev >= 0.0) {
            return Err(Error::domain(format!(
                "binding energy must be >= 0 keV, got {e_kev}"
            )));
        }
        Self::new(e_kev / MC2_KEV)
    }

    pub fn helium() -> Self {
        BindingEnergy(HELIUM_BINDING_KEV / MC2_KEV)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Converts keV to mc² units.
pub fn kev_to_mc2(e_kev: f64) -> Result<PhotonEnergy> {
    if !(e_kev >= 0.0) {
        return Err(Error::domain(format!(
            "energy must be >= 0 keV, got {e_kev}"
        )));
    }
    PhotonEnergy::new(e_kev / MC2_KEV)
}

/// Compton formula: energy of a photon scattered through `theta` when the
/// highest attainable scattered energy is `e_max`.
pub fn scattered_energy(e_max: PhotonEnergy, theta: f64) -> PhotonEnergy {
    let e = e_max.value();
    PhotonEnergy(e / (1.0 + e * (1.0 - theta.cos())))
}

/// Compton formula with the binding-energy limit `E_max = E_o - E_b`.
pub fn scattered_energy_bound(
    e_o: PhotonEnergy,
    e_b: BindingEnergy,
    theta: f64,
) -> Result<PhotonEnergy> {
    if e_o.value() <= e_b.value() {
        return Err(Error::Forbidden {
            e_o: e_o.value(),
            e_b: e_b.value(),
        });
    }
    Ok(scattered_energy(
        PhotonEnergy(e_o.value() - e_b.value()),
        theta,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn pe(x: f64) -> PhotonEnergy {
        PhotonEnergy::new(x).unwrap()
    }

    #[test]
    fn kev_conversion() {
        assert_eq!(kev_to_mc2(511.0).unwrap().value(), 1.0);
        assert_eq!(kev_to_mc2(0.0).unwrap().value(), 0.0);
        let e = kev_to_mc2(12.5).unwrap().value();
        assert_eq!(e, 12.5 / 511.0);
        assert!((e - 0.0245).abs() < 5e-5);
        assert!(matches!(kev_to_mc2(-1.0), Err(Error::Domain(_))));
        assert!(kev_to_mc2(f64::NAN).is_err());
    }

    #[test]
    fn compton_formula_values() {
        assert_eq!(scattered_energy(pe(1.0), FRAC_PI_2).value(), 0.5);
        for e in [0.0, 0.02, 1.0, 7.0] {
            assert_eq!(scattered_energy(pe(e), 0.0).value(), e);
        }
        // 0.024355 / 1.024355, evaluated by hand
        let e = scattered_energy(pe(0.024355), FRAC_PI_2).value();
        assert!((e - 0.023776).abs() < 1e-6, "{e}");
    }

    #[test]
    fn bound_formula() {
        let e = scattered_energy_bound(pe(1.0), BindingEnergy::FREE, FRAC_PI_2).unwrap();
        assert_eq!(e.value(), 0.5);

        let e = scattered_energy_bound(kev_to_mc2(12.5).unwrap(), BindingEnergy::helium(), FRAC_PI_2)
            .unwrap()
            .value();
        assert!((e - 0.023776).abs() < 1e-6, "{e}");

        let err = scattered_energy_bound(pe(0.01), BindingEnergy::new(0.02).unwrap(), 1.0);
        assert!(matches!(err, Err(Error::Forbidden { .. })));
        let err = scattered_energy_bound(pe(0.02), BindingEnergy::new(0.02).unwrap(), 1.0);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_bad_binding() {
        assert!(BindingEnergy::from_kev(-0.1).is_err());
        assert!(PhotonEnergy::new(-1e-9).is_err());
    }

    proptest! {
        #[test]
        fn decreasing_in_angle(e in 1e-4f64..10.0, a in 0.0f64..PI, b in 0.0f64..PI) {
            prop_assume!((a - b).abs() > 1e-9);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(scattered_energy(pe(e), lo).value() > scattered_energy(pe(e), hi).value());
        }

        #[test]
        fn bounded_by_incident(e in 1e-6f64..10.0, t in 0.0f64..=PI) {
            let s = scattered_energy(pe(e), t).value();
            prop_assert!(s > 0.0 && s <= e);
        }

        #[test]
        fn free_binding_is_bitwise_plain(e in 1e-6f64..10.0, t in 0.0f64..=PI) {
            let a = scattered_energy_bound(pe(e), BindingEnergy::FREE, t).unwrap();
            prop_assert_eq!(a.value().to_bits(), scattered_energy(pe(e), t).value().to_bits());
        }
    }
}
