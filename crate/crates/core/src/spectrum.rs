//! Discrete scattering data and the real phases built from it.
//!
//! The soliton carries the eigenvalue pair `{lambda_1, -conj(lambda_1)}` with
//! `lambda_1 = mu + i nu = l e^{i theta_1}`. The norming constant of the first
//! pole is parameterised as `R_1(0, sigma) / (2 nu) = e^{x0 + i sigma t0}`.
//! Every downstream quantity consumes a [`PhaseState`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Discrete eigenvalue `lambda_1 = mu + i nu` and its polar data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub mu: f64,
    pub nu: f64,
    /// Modulus `|lambda_1|`.
    pub l: f64,
    /// Argument of `lambda_1`, in `(0, pi)`.
    pub theta1: f64,
    /// `i nu / lambda_1`.
    pub beta: Complex64,
}

impl SpectralPoint {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.mu, self.nu)
    }

    /// The paired eigenvalue `-conj(lambda_1)`.
    pub fn partner(&self) -> Complex64 {
        Complex64::new(-self.mu, self.nu)
    }

    /// Prefactor `l / |mu|` carried by the transfer matrices.
    pub fn scale(&self) -> f64 {
        self.l / self.mu.abs()
    }

    pub(crate) fn ln_scale(&self) -> f64 {
        self.scale().ln()
    }
}

/// Validates `(mu, nu)` and fills in the polar data.
pub fn make_spectrum(mu: f64, nu: f64) -> Result<SpectralPoint> {
    if !mu.is_finite() || !nu.is_finite() {
        return Err(Error::NonFinite { what: "eigenvalue" });
    }
    if nu <= 0.0 {
        return Err(Error::NotUpperHalfPlane { nu });
    }
    if mu == 0.0 {
        return Err(Error::DegenerateEigenvalue);
    }
    let l = mu.hypot(nu);
    let theta1 = nu.atan2(mu);
    let beta = Complex64::new(0.0, nu) / Complex64::new(mu, nu);
    Ok(SpectralPoint { mu, nu, l, theta1, beta })
}

/// Integration constants `(x0, t0)` of the norming constant, plus the frame
/// offset at which the phases are evaluated.
///
/// The phases see the coordinate `x + x_shift`. Constants built with
/// [`NormingConstant::new`] have no offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormingConstant {
    pub x0: f64,
    pub t0: f64,
    pub x_shift: f64,
}

impl NormingConstant {
    pub fn new(x0: f64, t0: f64) -> Self {
        Self { x0, t0, x_shift: 0.0 }
    }

    pub fn with_shift(mut self, x_shift: f64) -> Self {
        self.x_shift = x_shift;
        self
    }

    /// `|R_1(0, sigma)|`, identical for both branches.
    pub fn residue_modulus(&self, s: &SpectralPoint) -> f64 {
        2.0 * s.nu * self.x0.exp()
    }
}

/// Constants that remove every extra phase shift: `t0 = 0`,
/// `x0 = (nu/mu) theta_1 + ln(l/|mu|)` and the frame offset
/// `x_1 = theta_1 / (2 mu)`.
///
/// With these, `xi_0 = 2 nu x` and `theta_0 - theta_1 = 2 mu x` at `t = 0`,
/// so `eta` is even and `u` odd about `x = 0`.
pub fn normalize_phases(s: &SpectralPoint) -> NormingConstant {
    NormingConstant { x0: s.nu / s.mu * s.theta1 + s.ln_scale(), t0: 0.0, x_shift: s.theta1 / (2.0 * s.mu) }
}

/// Branch label of the pair of conjugate spectral problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigmaBranch {
    Plus,
    Minus,
}

impl SigmaBranch {
    pub const BOTH: [SigmaBranch; 2] = [SigmaBranch::Plus, SigmaBranch::Minus];

    pub fn value(self) -> f64 {
        match self {
            SigmaBranch::Plus => 1.0,
            SigmaBranch::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            SigmaBranch::Plus => SigmaBranch::Minus,
            SigmaBranch::Minus => SigmaBranch::Plus,
        }
    }

    pub fn from_sign(sign: i32) -> Option<Self> {
        match sign {
            1 => Some(SigmaBranch::Plus),
            -1 => Some(SigmaBranch::Minus),
            _ => None,
        }
    }
}

/// Real phases at one space-time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub xi_plus: f64,
    pub xi_minus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    /// `(xi_+ + xi_-) / 2`
    pub xi0: f64,
    /// `(theta_+ + theta_-) / 2`
    pub theta0: f64,
    /// `(xi_- - xi_+) / 2`
    pub big_xi: f64,
}

impl PhaseState {
    pub fn from_components(xi_plus: f64, xi_minus: f64, theta_plus: f64, theta_minus: f64) -> Self {
        Self {
            xi_plus,
            xi_minus,
            theta_plus,
            theta_minus,
            xi0: 0.5 * (xi_plus + xi_minus),
            theta0: 0.5 * (theta_plus + theta_minus),
            big_xi: 0.5 * (xi_minus - xi_plus),
        }
    }
}

/// `xi_± = 2 nu (X ∓ 2 sigma mu t) - x0 + ln(l/|mu|)` and
/// `theta_± = 2 (mu X ∓ sigma (mu^2 - nu^2) t) ± sigma t0`, with `X = x + x_shift`.
///
/// Angles are not reduced modulo `2 pi`.
pub fn phases(x: f64, t: f64, sigma: SigmaBranch, s: &SpectralPoint, n: &NormingConstant) -> PhaseState {
    let sg = sigma.value();
    let xx = x + n.x_shift;
    let offset = -n.x0 + s.ln_scale();
    let drift = 2.0 * sg * s.mu * t;
    let rot = sg * (s.mu * s.mu - s.nu * s.nu) * t;
    PhaseState::from_components(
        2.0 * s.nu * (xx - drift) + offset,
        2.0 * s.nu * (xx + drift) + offset,
        2.0 * (s.mu * xx - rot) + sg * n.t0,
        2.0 * (s.mu * xx + rot) - sg * n.t0,
    )
}
