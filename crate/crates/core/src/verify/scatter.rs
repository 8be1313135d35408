//! Forward scattering for `phi_xx = (-lambda^2 + sigma lambda u + w) phi`,
//! `w = -u^2/4 + eta`.
//!
//! The left Jost solution `phi ~ e^{-i lambda x}` is integrated in the
//! phase-stripped form `chi = phi e^{i lambda x}`,
//!
//! ```text
//! chi'' = 2 i lambda chi' + (sigma lambda u + w) chi,   chi(-L) = 1, chi'(-L) = 0,
//! ```
//!
//! and at `x = L`, where `phi = a e^{-i lambda x} + b e^{i lambda x}`,
//! `a = chi - chi'/(2 i lambda)` and `b = chi'/(2 i lambda) e^{-2 i lambda L}`.
//!
//! When the potential continues analytically (the soliton does) the path
//! may leave the real axis along `x = p + i delta cos^2(pi p / 2L)`, which
//! leaves the end points fixed. This steps around real poles of the
//! potential and does not change `a`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::field_value;
use crate::spectrum::{NormingConstant, SigmaBranch, SpectralPoint};
use crate::tolerances::{INTEGRATOR_ERROR, SCATTERING_ZERO, TAU_SINGULAR};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A pair `(u, eta)` the spectral problem can be integrated against.
pub trait Potential {
    /// Fields at `z`; off-axis points are only requested when
    /// [`Potential::analytic`] is true.
    fn fields(&self, z: Complex64) -> Result<(Complex64, Complex64)>;

    fn analytic(&self) -> bool {
        false
    }
}

/// The constructed soliton frozen at time `t`.
#[derive(Debug, Clone, Copy)]
pub struct SolitonPotential {
    pub spectrum: SpectralPoint,
    pub norming: NormingConstant,
    pub t: f64,
}

impl Potential for SolitonPotential {
    fn fields(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let f = field_value(z, self.t, SigmaBranch::Plus, &self.spectrum, &self.norming, TAU_SINGULAR)?;
        Ok((f.u, f.eta))
    }

    fn analytic(&self) -> bool {
        true
    }
}

/// Real-valued closures on the real axis.
pub struct FnPotential<U, E> {
    pub u: U,
    pub eta: E,
}

impl<U: Fn(f64) -> f64, E: Fn(f64) -> f64> Potential for FnPotential<U, E> {
    fn fields(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        if z.im != 0.0 {
            return Err(Error::ContourUnsupported);
        }
        Ok((Complex64::new((self.u)(z.re), 0.0), Complex64::new((self.eta)(z.re), 0.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Contour {
    RealAxis,
    /// `x = p + i height cos^2(pi p / 2L)`
    Indented {
        height: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterConfig {
    pub half_width: f64,
    /// RK4 steps across `[-L, L]`; must be even (the estimate reruns at half).
    pub steps: usize,
    pub contour: Contour,
    /// Largest accepted step-halving estimate of the error in `a`.
    pub tolerance: f64,
}

impl Default for ScatterConfig {
    fn default() -> Self {
        ScatterConfig {
            half_width: 40.0,
            steps: 8000,
            contour: Contour::RealAxis,
            tolerance: INTEGRATOR_ERROR,
        }
    }
}

impl ScatterConfig {
    fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!("half width {}", self.half_width)));
        }
        if self.steps < 4 || !self.steps.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("step count {} must be even and >= 4", self.steps)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringResult {
    pub lambda: Complex64,
    pub sigma: SigmaBranch,
    pub a: Complex64,
    /// Only for real `lambda`.
    pub b: Option<Complex64>,
    pub domain_half_width: f64,
    pub step_count: usize,
    /// `|a(steps) - a(steps/2)| / 15`
    pub error_estimate: f64,
}

/// Potential values on the RK4 lattice of one contour, sampled once and
/// reused for every `lambda` and `sigma`.
pub struct SampledPotential {
    half_width: f64,
    steps: usize,
    /// `(dz/dp, u, w)` at `p_k = -L + k L / steps`, `k = 0..=2 steps`.
    nodes: Vec<(Complex64, Complex64, Complex64)>,
}

impl SampledPotential {
    pub fn new(pot: &dyn Potential, cfg: &ScatterConfig) -> Result<Self> {
        cfg.validate()?;
        let height = match cfg.contour {
            Contour::RealAxis => 0.0,
            Contour::Indented { height } => {
                if height != 0.0 && !pot.analytic() {
                    return Err(Error::ContourUnsupported);
                }
                height
            }
        };
        let l = cfg.half_width;
        let k = std::f64::consts::PI / (2.0 * l);
        let count = 2 * cfg.steps;
        let mut nodes = Vec::with_capacity(count + 1);
        for j in 0..=count {
            let p = -l + 2.0 * l * j as f64 / count as f64;
            let z = Complex64::new(p, height * (k * p).cos().powi(2));
            let dz = Complex64::new(1.0, -height * k * (2.0 * k * p).sin());
            let (u, eta) = pot.fields(z)?;
            nodes.push((dz, u, eta - 0.25 * u * u));
        }
        Ok(SampledPotential { half_width: l, steps: cfg.steps, nodes })
    }

    /// `(chi, chi_x)` at `x = L` using every `stride`-th half-step node.
    fn integrate(&self, lambda: Complex64, sigma: f64, stride: usize) -> (Complex64, Complex64) {
        let n = self.steps / stride;
        let h = 2.0 * self.half_width / n as f64;
        let rhs = |j: usize, c: Complex64, d: Complex64| {
            let (dz, u, w) = self.nodes[j];
            (dz * d, dz * (2.0 * I * lambda * d + (sigma * lambda * u + w) * c))
        };
        let (mut c, mut d) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        for i in 0..n {
            let j0 = 2 * i * stride;
            let (jm, j1) = (j0 + stride, j0 + 2 * stride);
            let k1 = rhs(j0, c, d);
            let k2 = rhs(jm, c + 0.5 * h * k1.0, d + 0.5 * h * k1.1);
            let k3 = rhs(jm, c + 0.5 * h * k2.0, d + 0.5 * h * k2.1);
            let k4 = rhs(j1, c + h * k3.0, d + h * k3.1);
            c += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            d += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        (c, d)
    }

    fn coefficients(&self, lambda: Complex64, sigma: f64, stride: usize) -> (Complex64, Complex64) {
        let (c, d) = self.integrate(lambda, sigma, stride);
        let ratio = d / (2.0 * I * lambda);
        let b = ratio * (-2.0 * I * lambda * self.half_width).exp();
        (c - ratio, b)
    }

    /// `a` only, at the full step count.
    pub fn a(&self, lambda: Complex64, sigma: SigmaBranch) -> Complex64 {
        self.coefficients(lambda, sigma.value(), 1).0
    }

    pub fn scatter(&self, lambda: Complex64, sigma: SigmaBranch, tolerance: f64) -> Result<ScatteringResult> {
        if lambda.im < 0.0 || lambda == Complex64::new(0.0, 0.0) || !lambda.is_finite() {
            return Err(Error::BadSpectralParameter(
                lambda.to_string(),
                "needs a nonzero point of the closed upper half plane",
            ));
        }
        let (a, b) = self.coefficients(lambda, sigma.value(), 1);
        let (a_half, _) = self.coefficients(lambda, sigma.value(), 2);
        let estimate = (a - a_half).norm() / 15.0;
        if !(estimate <= tolerance) {
            return Err(Error::StepCountTooSmall { estimate, tolerance });
        }
        Ok(ScatteringResult {
            lambda,
            sigma,
            a,
            b: (lambda.im == 0.0).then_some(b),
            domain_half_width: self.half_width,
            step_count: self.steps,
            error_estimate: estimate,
        })
    }
}

/// Scattering coefficients of `pot` at one spectral parameter.
pub fn forward_scatter(
    pot: &dyn Potential,
    lambda: Complex64,
    sigma: SigmaBranch,
    cfg: &ScatterConfig,
) -> Result<ScatteringResult> {
    SampledPotential::new(pot, cfg)?.scatter(lambda, sigma, cfg.tolerance)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    pub zeros: Vec<Complex64>,
    /// `|a|` at each zero.
    pub residuals: Vec<f64>,
    pub iterations: Vec<usize>,
    /// Guesses that did not converge, with the reason.
    pub failures: Vec<(Complex64, String)>,
}

const MAX_SECANT: usize = 50;

fn secant(
    samples: &SampledPotential,
    guess: Complex64,
    sigma: SigmaBranch,
) -> std::result::Result<(Complex64, f64, usize), String> {
    let mut x0 = guess;
    let mut x1 = guess + Complex64::new(1e-3, 1e-3);
    let mut f0 = samples.a(x0, sigma);
    let mut f1 = samples.a(x1, sigma);
    for it in 1..=MAX_SECANT {
        if f1.norm() < SCATTERING_ZERO {
            return Ok((x1, f1.norm(), it));
        }
        let df = f1 - f0;
        if df.norm() == 0.0 {
            return Err("a is flat along the secant".into());
        }
        let x2 = x1 - f1 * (x1 - x0) / df;
        if !x2.is_finite() || x2.im <= 0.0 {
            return Err(format!("iterate {x2} left the upper half plane"));
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = samples.a(x1, sigma);
    }
    Err(format!("no convergence after {MAX_SECANT} iterations"))
}

/// Zeros of `a(., sigma)` reached by secant iteration from each guess.
pub fn find_spectrum(
    pot: &dyn Potential,
    sigma: SigmaBranch,
    guesses: &[Complex64],
    cfg: &ScatterConfig,
) -> Result<SpectrumEstimate> {
    let samples = SampledPotential::new(pot, cfg)?;
    Ok(spectrum_from_samples(&samples, sigma, guesses))
}

pub fn spectrum_from_samples(
    samples: &SampledPotential,
    sigma: SigmaBranch,
    guesses: &[Complex64],
) -> SpectrumEstimate {
    let mut out = SpectrumEstimate { zeros: vec![], residuals: vec![], iterations: vec![], failures: vec![] };
    for &g in guesses {
        match secant(samples, g, sigma) {
            Ok((z, r, it)) => {
                if out.zeros.iter().all(|q| (q - z).norm() >= 1e-6) {
                    out.zeros.push(z);
                    out.residuals.push(r);
                    out.iterations.push(it);
                }
            }
            Err(why) => out.failures.push((g, why)),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    pub times: Vec<f64>,
    /// Zeros found at each time, matched to the guesses in order.
    pub zeros: Vec<Vec<Complex64>>,
    pub max_drift: f64,
    pub failures: Vec<(f64, Complex64, String)>,
}

/// Runs [`find_spectrum`] on the soliton at each time from guesses 10% off
/// `lambda_1` and `-conj(lambda_1)`, and measures how far the zeros move.
pub fn isospectrality_check(
    s: &SpectralPoint,
    n0: &NormingConstant,
    times: &[f64],
    sigma: SigmaBranch,
    cfg: &ScatterConfig,
) -> Result<IsospectralReport> {
    if times.is_empty() {
        return Err(Error::InvalidGrid("no times given".into()));
    }
    let guesses = [s.lambda() * 1.1, s.partner() * 1.1];
    let mut report =
        IsospectralReport { times: times.to_vec(), zeros: vec![], max_drift: 0.0, failures: vec![] };
    for &t in times {
        let pot = SolitonPotential { spectrum: *s, norming: *n0, t };
        let est = find_spectrum(&pot, sigma, &guesses, cfg)?;
        for (g, why) in est.failures {
            report.failures.push((t, g, why));
        }
        report.zeros.push(est.zeros);
    }
    let first = &report.zeros[0];
    for later in &report.zeros[1..] {
        for z in first {
            let d = later.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            report.max_drift = report.max_drift.max(d);
        }
    }
    Ok(report)
}
