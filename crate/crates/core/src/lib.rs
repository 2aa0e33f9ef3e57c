//! Polarization-correlated Compton scattering of hard X-ray Bell-state
//! photon pairs.
//!
//! The crate evaluates, for the four Bell states `Ψ±` and `Φ±`:
//!
//! - single-arm Stokes/Mueller intensities `⟨I|T(θ;E_o) M(ψ)|s⟩`
//!   ([`polarimetry`]);
//! - Klein–Nishina double-differential cross sections and the `Ψ + Φ` sum
//!   rule ([`bell`]);
//! - scattering-function (bound electron) corrections and the
//!   impulse-approximation precision band ([`incoherent`]);
//! - the relative azimuth of the two scattering planes for a pair of counter
//!   azimuths and a phase-matching angle difference ([`geometry`]);
//! - the azimuthal ratios `R` and `ρ`, their bands and peak search
//!   ([`ratios`]).
//!
//! Energies are in units of mc² (511 keV), angles in radians. Single-arm
//! quantities are in units of r₀², two-arm products in r₀⁴.
//!
//! Grid scans run on the rayon pool when the default `parallel` feature is
//! enabled and sequentially otherwise; results are identical either way.
//!
//! ```
//! use compton_bell::{kinematics::kev_to_mc2, ratios::ratio_d, bell::StateFamily};
//!
//! let e_o = kev_to_mc2(12.5).unwrap();
//! let r = ratio_d(89.983_f64.to_radians(), e_o, StateFamily::Psi).unwrap();
//! assert!((r - 1713.04).abs() < 0.1);
//! ```

// `!(x > 0.0)` style checks are used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod commands;
pub mod config;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod incoherent;
pub mod kinematics;
pub mod output;
pub mod polarimetry;
pub mod ratios;

pub use bell::{ddxsec_kn, kn_product, BellState, JointKinematics, StateFamily};
pub use error::{Error, Result};
pub use kinematics::{BindingEnergy, PhotonEnergy};
pub use polarimetry::StokesVector;
