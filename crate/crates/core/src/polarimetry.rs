//! Stokes-vector algebra for a single Compton-scattered photon.
//!
//! Stokes vectors are in the linear basis `(I, Q, U, V)`. The transition
//! matrix uses the McMaster form with `T[0][1] = +sin²θ`, so the vertical
//! state `|+⟩ = (1, 1, 0, 0)` (polarized perpendicular to the scattering
//! plane) gives the larger cross section. Intensities are in units of r₀².

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::kinematics::PhotonEnergy;

pub type Matrix4 = [[f64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub i: f64,
    pub q: f64,
    pub u: f64,
    pub v: f64,
}

impl StokesVector {
    /// Vertical linear polarization `|+⟩`.
    pub const PLUS: StokesVector = StokesVector::new(1.0, 1.0, 0.0, 0.0);
    /// Horizontal linear polarization `|−⟩`.
    pub const MINUS: StokesVector = StokesVector::new(1.0, -1.0, 0.0, 0.0);
    pub const UNPOLARIZED: StokesVector = StokesVector::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(i: f64, q: f64, u: f64, v: f64) -> Self {
        StokesVector { i, q, u, v }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.i, self.q, self.u, self.v]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        StokesVector::new(a[0], a[1], a[2], a[3])
    }

    /// Reading of a polarization-insensitive counter, `⟨I|s⟩`.
    #[inline]
    pub fn intensity(&self) -> f64 {
        self.i
    }

    pub fn degree_of_polarization(&self) -> f64 {
        (self.q * self.q + self.u * self.u + self.v * self.v).sqrt() / self.i
    }
}

fn mat_vec(m: &Matrix4, s: &StokesVector) -> StokesVector {
    let x = s.as_array();
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(&x).map(|(a, b)| a * b).sum();
    }
    StokesVector::from_array(out)
}

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

/// Frame rotation `M(ψ)` about the propagation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix {
    psi: f64,
    m: Matrix4,
}

impl RotationMatrix {
    pub fn new(psi: f64) -> Self {
        let (s, c) = (2.0 * psi).sin_cos();
        RotationMatrix {
            psi,
            m: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, c, s, 0.0],
                [0.0, -s, c, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ],
        }
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    pub fn apply(&self, s: &StokesVector) -> StokesVector {
        mat_vec(&self.m, s)
    }
}

impl Mul for RotationMatrix {
    type Output = Matrix4;

    fn mul(self, rhs: RotationMatrix) -> Matrix4 {
        mat_mul(&self.m, &rhs.m)
    }
}

pub fn rotation_matrix(psi: f64) -> RotationMatrix {
    RotationMatrix::new(psi)
}

/// Compton transition matrix `T(θ; E_o)` for a free electron, averaged over
/// electron spins and summed over final photon polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix {
    theta: f64,
    e_o: PhotonEnergy,
    m: Matrix4,
}

impl TransitionMatrix {
    pub fn new(theta: f64, e_o: PhotonEnergy) -> Result<Self> {
        let e_o = e_o.require_incident()?;
        check_polar(theta)?;
        let k = energy_ratio(theta, e_o.value());
        let (sin_t, cos_t) = theta.sin_cos();
        let sin2 = sin_t * sin_t;
        let kk = k + 1.0 / k;
        let pre = 0.5 * k * k;
        let m = [
            [pre * (kk - sin2), pre * sin2, 0.0, 0.0],
            [pre * sin2, pre * (1.0 + cos_t * cos_t), 0.0, 0.0],
            [0.0, 0.0, pre * 2.0 * cos_t, 0.0],
            [0.0, 0.0, 0.0, pre * kk * cos_t],
        ];
        Ok(TransitionMatrix { theta, e_o, m })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn energy(&self) -> PhotonEnergy {
        self.e_o
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    pub fn apply(&self, s: &StokesVector) -> StokesVector {
        mat_vec(&self.m, s)
    }
}

pub fn transition_matrix(theta: f64, e_o: PhotonEnergy) -> Result<TransitionMatrix> {
    TransitionMatrix::new(theta, e_o)
}

/// `E/E_o` for a free electron.
#[inline]
pub(crate) fn energy_ratio(theta: f64, e_o: f64) -> f64 {
    1.0 / (1.0 + e_o * (1.0 - theta.cos()))
}

pub(crate) fn check_polar(theta: f64) -> Result<()> {
    if (0.0..=std::f64::consts::PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "polar scattering angle must lie in [0, pi], got {theta}"
        )))
    }
}

/// Single-arm counter reading `⟨I|T(θ;E_o) M(ψ)|s⟩` in r₀² units.
pub fn arm_intensity(theta: f64, e_o: PhotonEnergy, psi: f64, s: &StokesVector) -> Result<f64> {
    let t = TransitionMatrix::new(theta, e_o)?;
    let m = RotationMatrix::new(psi);
    Ok(t.apply(&m.apply(s)).intensity())
}

/// Polarized Klein–Nishina cross section in r₀² units, written directly in
/// terms of the angle `chi` between the incident polarization vector and the
/// scattering plane (`chi = 0`: polarization in the plane).
///
/// Kept independent of the matrix route and used to cross-check it.
pub fn kn_polarized_oracle(theta: f64, e_o: PhotonEnergy, chi: f64) -> f64 {
    let k = 1.0 / (1.0 + e_o.value() * (1.0 - theta.cos()));
    let s = theta.sin();
    let c = chi.cos();
    0.5 * k * k * (k + 1.0 / k - 2.0 * s * s * c * c)
}
