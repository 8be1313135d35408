//! Exponential-sum representation of `Gamma`, of `Gamma (N - 1)` and of the
//! entire function `D = Gamma N`.
//!
//! Every building block is `c e^{E + rho (x - x_r)}` with a constant rate
//! `rho`, so values and x-derivatives of any order come from one pass.
//! Sums are scaled by `e^{-M}` with `M` the largest real exponent, which
//! keeps ratios exact when the individual terms overflow.

use num_complex::Complex64;

use crate::spectrum::{phases, NormingConstant, PhaseState, SigmaBranch, SpectralPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy)]
pub(crate) struct ExpTerm {
    coef: Complex64,
    exponent: Complex64,
    rate: Complex64,
}

fn term(coef: Complex64, exponent: Complex64, rate: Complex64) -> ExpTerm {
    ExpTerm { coef, exponent, rate }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Value and two x-derivatives of an exponential sum, all scaled by
/// `e^{-log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSum {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub log_scale: f64,
}

/// `D = Gamma N` and its logarithmic derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauValue {
    /// `D e^{-log_scale}`; its modulus is O(1) away from zeros of `D`.
    pub scaled: Complex64,
    pub log_scale: f64,
    /// `D'/D`
    pub first: Complex64,
    /// `(ln D)'' = D''/D - (D'/D)^2`
    pub second: Complex64,
}

impl TauValue {
    /// Zero of `D` relative to its dominant exponential.
    pub fn is_singular(&self, tol: f64) -> bool {
        !(self.scaled.norm() >= tol)
    }
}

fn a_terms(p: &PhaseState, s: &SpectralPoint) -> [ExpTerm; 2] {
    let c = re(0.5 * (s.mu / s.l).powi(2));
    [term(c, re(2.0 * p.xi0), re(4.0 * s.nu)), term(c, re(-2.0 * p.xi0), re(-4.0 * s.nu))]
}

fn e_terms(p: &PhaseState, s: &SpectralPoint) -> [ExpTerm; 4] {
    let k = I * (s.mu.abs() * s.nu / (s.l * s.l));
    let alpha = p.theta_plus - s.theta1;
    let gamma = p.theta_minus - s.theta1;
    let (m, n) = (s.mu, s.nu);
    [
        term(-k, Complex64::new(p.xi_minus, -alpha), Complex64::new(2.0 * n, -2.0 * m)),
        term(k, Complex64::new(-p.xi_minus, -alpha), Complex64::new(-2.0 * n, -2.0 * m)),
        term(k, Complex64::new(p.xi_plus, gamma), Complex64::new(2.0 * n, 2.0 * m)),
        term(-k, Complex64::new(-p.xi_plus, gamma), Complex64::new(-2.0 * n, 2.0 * m)),
    ]
}

fn oscillating(p: &PhaseState, s: &SpectralPoint, c: f64) -> [ExpTerm; 2] {
    let phi = p.theta0 - s.theta1;
    [
        term(re(c), Complex64::new(0.0, 2.0 * phi), Complex64::new(0.0, 4.0 * s.mu)),
        term(re(c), Complex64::new(0.0, -2.0 * phi), Complex64::new(0.0, -4.0 * s.mu)),
    ]
}

/// `Gamma = (mu^2/l^2) cosh 2xi_0 - cosh 2Xi + (nu^2/l^2) cos 2(theta_0 - theta_1)`
pub(crate) fn gamma_terms(p: &PhaseState, s: &SpectralPoint) -> Vec<ExpTerm> {
    let mut v = Vec::with_capacity(6);
    v.extend(a_terms(p, s));
    v.push(term(re(-0.5), re(2.0 * p.big_xi), re(0.0)));
    v.push(term(re(-0.5), re(-2.0 * p.big_xi), re(0.0)));
    v.extend(oscillating(p, s, 0.5 * (s.nu / s.l).powi(2)));
    v
}

fn b_terms(p: &PhaseState, s: &SpectralPoint, offset: f64) -> [ExpTerm; 2] {
    let l2 = s.l * s.l;
    let plus = Complex64::new(s.nu, s.mu).powi(2) / (2.0 * l2) + offset;
    let minus = Complex64::new(s.nu, -s.mu).powi(2) / (2.0 * l2) + offset;
    [term(plus, re(2.0 * p.big_xi), re(0.0)), term(minus, re(-2.0 * p.big_xi), re(0.0))]
}

/// `Gamma (N - 1)`
pub(crate) fn numerator_terms(p: &PhaseState, s: &SpectralPoint) -> Vec<ExpTerm> {
    let mut v = Vec::with_capacity(8);
    v.extend(b_terms(p, s, 0.5));
    v.extend(oscillating(p, s, -(s.nu / s.l).powi(2)));
    v.extend(e_terms(p, s));
    v
}

/// `D = Gamma N`
pub(crate) fn determinant_terms(p: &PhaseState, s: &SpectralPoint) -> Vec<ExpTerm> {
    let mut v = Vec::with_capacity(10);
    v.extend(a_terms(p, s));
    v.extend(b_terms(p, s, 0.0));
    v.extend(oscillating(p, s, -0.5 * (s.nu / s.l).powi(2)));
    v.extend(e_terms(p, s));
    v
}

/// Exponents shifted by `rate * i y`, i.e. the sum continued to `x + i y`.
fn shifted(terms: &[ExpTerm], y: f64) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
    terms.iter().map(move |t| (t.coef, t.exponent + t.rate * Complex64::new(0.0, y)))
}

pub(crate) fn max_exponent(terms: &[ExpTerm], y: f64) -> f64 {
    shifted(terms, y).map(|(_, e)| e.re).fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn scaled_sum(terms: &[ExpTerm], y: f64, m: f64) -> ScaledSum {
    let mut out = ScaledSum { value: re(0.0), d1: re(0.0), d2: re(0.0), log_scale: m };
    for (t, (c, e)) in terms.iter().zip(shifted(terms, y)) {
        let v = c * (e - m).exp();
        out.value += v;
        out.d1 += t.rate * v;
        out.d2 += t.rate * t.rate * v;
    }
    out
}

/// Log-derivatives measured against the rate of the largest term, so that
/// far-field values (where `D'/D` tends to that rate) keep relative accuracy.
pub(crate) fn log_derivatives(terms: &[ExpTerm], y: f64) -> TauValue {
    let m = max_exponent(terms, y);
    let mut scaled = re(0.0);
    let mut parts = Vec::with_capacity(terms.len());
    let mut dominant = (0.0, re(0.0));
    for (t, (c, e)) in terms.iter().zip(shifted(terms, y)) {
        let v = c * (e - m).exp();
        scaled += v;
        if v.norm() > dominant.0 {
            dominant = (v.norm(), t.rate);
        }
        parts.push((t.rate, v));
    }
    let rho = dominant.1;
    let (mut s1, mut s2) = (re(0.0), re(0.0));
    for (r, v) in parts {
        let d = r - rho;
        s1 += d * v;
        s2 += d * d * v;
    }
    let q = s1 / scaled;
    TauValue { scaled, log_scale: m, first: rho + q, second: s2 / scaled - q * q }
}

/// `D(z, t, sigma)` at complex position `z`, continued analytically off the real axis.
pub fn tau(z: Complex64, t: f64, sigma: SigmaBranch, s: &SpectralPoint, n0: &NormingConstant) -> TauValue {
    let p = phases(z.re, t, sigma, s, n0);
    log_derivatives(&determinant_terms(&p, s), z.im)
}

/// `Gamma` with its first two x-derivatives, scaled by `e^{-max(2|xi_0|, 2|Xi|)}`.
pub fn gamma_derivatives(p: &PhaseState, s: &SpectralPoint) -> ScaledSum {
    let terms = gamma_terms(p, s);
    let m = max_exponent(&terms, 0.0);
    scaled_sum(&terms, 0.0, m)
}
