//! Physical observables of the two-pole soliton.
//!
//! `N(x, sigma)` is a ratio `D / Gamma` of two exponential sums. Its poles
//! (zeros of `Gamma`) cancel out of the fields, which depend on `D = Gamma N`
//! alone:
//!
//! ```text
//! u   = i sigma (N_x/N - conj(N)_x/conj(N)) = -2 sigma Im (ln D)_x
//! eta = -(ln |D|)_xx
//! ```
//!
//! Both are real, independent of `sigma`, and solve the KB system. The
//! fields are singular only at real zeros of `D`.

mod charge;
pub mod singular;
pub mod tau;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use charge::{far_field_bounds, far_left_charge, omega_plus};
pub use singular::{field_zeros, gamma_zeros, SingularKind, SingularPoint};
pub use tau::{gamma_derivatives, tau, ScaledSum, TauValue};

use crate::error::{Error, Result};
use crate::rh_algebra::{gamma, jost_closed_form, pole_coefficients};
use crate::spectrum::{phases, NormingConstant, SigmaBranch, SpectralPoint};
use crate::tolerances::{GAMMA_SINGULAR, REALITY_RELATIVE, TAU_SINGULAR};

/// `N(x, sigma)` and its first two x-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NValue {
    pub n: Complex64,
    pub n_x: Complex64,
    pub n_xx: Complex64,
}

/// `N = 1 + Gamma^-1 [ (2 nu^2/l^2)(cosh 2Xi - cos 2(theta_0 - theta_1)) + 2i (mu nu/l^2) sinh 2Xi
///      - 2i (|mu| nu/l^2)(sinh xi_- e^{-i(theta_+ - theta_1)} - sinh xi_+ e^{i(theta_- - theta_1)}) ]`
///
/// Derivatives follow from the quotient rule on the two exponential sums.
pub fn n_value(
    x: f64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<NValue> {
    let p = phases(x, t, sigma, s, n0);
    let g = gamma(&p, s);
    if g.is_singular(GAMMA_SINGULAR) {
        return Err(Error::SingularPoint { gamma: g.gamma, tolerance: GAMMA_SINGULAR });
    }
    let m = g.log_scale;
    let den = tau::scaled_sum(&tau::gamma_terms(&p, s), 0.0, m);
    let num = tau::scaled_sum(&tau::numerator_terms(&p, s), 0.0, m);
    let r = num.value / den.value;
    let r1 = (num.d1 - r * den.d1) / den.value;
    let r2 = (num.d2 - 2.0 * r1 * den.d1 - r * den.d2) / den.value;
    Ok(NValue { n: r + 1.0, n_x: r1, n_xx: r2 })
}

/// `e^{2 i sigma omega_+} = N / conj(N)`
pub fn phase_factor(
    x: f64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<Complex64> {
    let d = tau(Complex64::new(x, 0.0), t, sigma, s, n0);
    if d.is_singular(TAU_SINGULAR) {
        return Err(Error::FieldSingularity { tau: d.scaled.norm(), tolerance: TAU_SINGULAR });
    }
    Ok(d.scaled / d.scaled.conj())
}

/// Complex evaluation of the fields, before the imaginary residue is dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue {
    pub u: Complex64,
    pub eta: Complex64,
}

/// Fields at a possibly complex position.
///
/// `conj(N)(x, sigma)` is taken as `N(x, -sigma)`, evaluated independently,
/// so on the real axis the imaginary parts measure how well that symmetry
/// holds. Off the axis the same expressions give the analytic continuation.
pub fn field_value(
    z: Complex64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
    tol: f64,
) -> Result<FieldValue> {
    let a = tau(z, t, sigma, s, n0);
    let b = tau(z, t, sigma.flip(), s, n0);
    for d in [&a, &b] {
        if d.is_singular(tol) {
            return Err(Error::FieldSingularity { tau: d.scaled.norm(), tolerance: tol });
        }
    }
    let i_sigma = Complex64::new(0.0, sigma.value());
    Ok(FieldValue { u: i_sigma * (a.first - b.first), eta: -0.5 * (a.second + b.second) })
}

fn real_part(v: Complex64, what: &'static str) -> Result<f64> {
    if !v.is_finite() {
        return Err(Error::NonFinite { what });
    }
    if v.im.abs() > REALITY_RELATIVE * v.re.abs().max(1.0) {
        return Err(Error::NotReal { what, imag: v.im });
    }
    Ok(v.re)
}

/// `(u, eta)` on the real axis with the reality check applied.
pub fn real_fields(x: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant, tol: f64) -> Result<(f64, f64)> {
    let f = field_value(Complex64::new(x, 0.0), t, SigmaBranch::Plus, s, n0, tol)?;
    Ok((real_part(f.u, "velocity")?, real_part(f.eta, "elevation")?))
}

/// Fluid velocity `u(x, t)`.
pub fn velocity(x: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant) -> Result<f64> {
    real_fields(x, t, s, n0, TAU_SINGULAR).map(|f| f.0)
}

/// Surface elevation `eta(x, t)`.
pub fn elevation(x: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant) -> Result<f64> {
    real_fields(x, t, s, n0, TAU_SINGULAR).map(|f| f.1)
}

/// `-2 (ln N conj(N))_xx` from the analytic derivatives of `N`.
///
/// This drops the `Gamma` contribution and doubles the `N` one, so it does
/// not solve the KB system; it is kept as a comparison diagnostic.
pub fn log_n_elevation(
    x: f64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<f64> {
    let v = n_value(x, t, sigma, s, n0)?;
    let q = v.n_x / v.n;
    Ok(-4.0 * (v.n_xx / v.n - q * q).re)
}

/// `int_a^b eta dx`, telescoped to the boundary log-derivatives of `|D|`.
pub fn elevation_integral(a: f64, b: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant) -> f64 {
    let edge = |x: f64| tau(Complex64::new(x, 0.0), t, SigmaBranch::Plus, s, n0).first.re;
    edge(a) - edge(b)
}

/// Relative residual of `g . conj(Psi) = 1 - (1/4nu) (ln conj(N) Gamma)_x`,
/// with `g = (f_+, conj(f_-))` and `Psi` the discrete Jost vector.
pub fn g_psi_identity_check(
    x: f64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<f64> {
    let p = phases(x, t, sigma, s, n0);
    // only e^{2 i sigma omega_+} enters, and that equals D / conj(D)
    let d = tau(Complex64::new(x, 0.0), t, sigma, s, n0);
    let omega = sigma.value() * d.scaled.arg();
    let psi = jost_closed_form(&p, s, sigma, omega, GAMMA_SINGULAR)?;
    let lhs = pole_coefficients(&p, s, sigma, omega).dot(&psi.as_vec().conj());
    let nv = n_value(x, t, sigma, s, n0)?;
    let g = gamma_derivatives(&p, s);
    let log_x = (nv.n_x / nv.n).conj() + g.d1 / g.value;
    let rhs = Complex64::new(1.0, 0.0) - log_x / (4.0 * s.nu);
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0))
}

/// Uniform x-grid repeated at each time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub x_step: f64,
    pub times: Vec<f64>,
}

impl GridSpec {
    /// `x_min == x_max` is accepted as a one-node grid.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidGrid(m.to_string()));
        if ![self.x_min, self.x_max, self.x_step].iter().all(|v| v.is_finite())
            || !self.times.iter().all(|v| v.is_finite())
        {
            return bad("non-finite bound, step or time");
        }
        if self.x_max < self.x_min {
            return bad("x_max is below x_min");
        }
        if self.x_step <= 0.0 {
            return bad("x_step must be positive");
        }
        if self.times.is_empty() {
            return bad("no times given");
        }
        let n = (self.x_max - self.x_min) / self.x_step;
        if (n - n.round()).abs() > 1e-9 * n.max(1.0) {
            return bad("x_step does not divide the range");
        }
        if n.round() > 1e8 {
            return bad("more than 1e8 nodes per slice");
        }
        Ok(())
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        let n = ((self.x_max - self.x_min) / self.x_step).round() as usize;
        (0..=n).map(|i| self.x_min + i as f64 * self.x_step).collect()
    }
}

/// One grid node. `u` and `eta` are NaN exactly when `singular` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    pub eta: f64,
    pub gamma: f64,
    pub n: Complex64,
    pub singular: bool,
}

/// Evaluates one node; field singularities become flagged samples.
pub fn sample(x: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant, tol: f64) -> Result<FieldSample> {
    let p = phases(x, t, SigmaBranch::Plus, s, n0);
    let g = gamma(&p, s);
    let m = g.log_scale;
    let num = tau::scaled_sum(&tau::numerator_terms(&p, s), 0.0, m).value;
    let n = num / g.mantissa + 1.0;
    let (u, eta, singular) = match real_fields(x, t, s, n0, tol) {
        Ok((u, eta)) => (u, eta, false),
        Err(Error::FieldSingularity { .. }) => (f64::NAN, f64::NAN, true),
        Err(e) => return Err(e),
    };
    Ok(FieldSample { x, t, u, eta, gamma: g.gamma, n, singular })
}

/// Samples in row-major order: all x at the first time, then the next time.
pub fn evaluate_grid(
    g: &GridSpec,
    s: &SpectralPoint,
    n0: &NormingConstant,
    tol: f64,
) -> Result<Vec<FieldSample>> {
    g.validate()?;
    let xs = g.x_nodes();
    let mut out = Vec::with_capacity(xs.len() * g.times.len());
    for &t in &g.times {
        for &x in &xs {
            out.push(sample(x, t, s, n0, tol)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{make_spectrum, normalize_phases};
    use proptest::prelude::*;

    fn steep() -> (SpectralPoint, NormingConstant) {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        (s, n)
    }

    fn literal_n(x: f64, t: f64, sigma: SigmaBranch, s: &SpectralPoint, n0: &NormingConstant) -> Complex64 {
        let p = phases(x, t, sigma, s, n0);
        let g = gamma(&p, s).gamma;
        let l2 = s.l * s.l;
        let i = Complex64::new(0.0, 1.0);
        let big = 2.0 * p.big_xi;
        let phi = p.theta0 - s.theta1;
        let even =
            (s.nu * s.nu / l2) * (big.cosh() - (2.0 * phi).cos()) + i * (s.mu * s.nu / l2) * big.sinh();
        let odd = p.xi_minus.sinh() * Complex64::from_polar(1.0, -(p.theta_plus - s.theta1))
            - p.xi_plus.sinh() * Complex64::from_polar(1.0, p.theta_minus - s.theta1);
        1.0 + (2.0 / g) * even - i * (2.0 / g) * (s.mu * s.nu / l2) * odd
    }

    #[test]
    fn n_matches_expanded_formula() {
        let (s, n) = steep();
        for (x, t) in [(1.0, 1.0), (-3.0, 0.5), (4.0, -2.0), (0.1, 11.0)] {
            for sigma in SigmaBranch::BOTH {
                let v = n_value(x, t, sigma, &s, &n).unwrap();
                let lit = literal_n(x, t, sigma, &s, &n);
                assert!((v.n - lit).norm() < 1e-11 * (1.0 + lit.norm()), "{} {}", v.n, lit);
            }
        }
    }

    #[test]
    fn n_reference_value() {
        // (x, t) = (1, 1), sigma = +1, against a 40-digit evaluation
        let (s, n) = steep();
        let v = n_value(1.0, 1.0, SigmaBranch::Plus, &s, &n).unwrap();
        let lit = literal_n(1.0, 1.0, SigmaBranch::Plus, &s, &n);
        assert!((v.n - lit).norm() < 1e-12);
        let c = Complex64::new;
        assert!((v.n - c(0.316_350_609_642_179_1, -0.730_735_752_788_153_5)).norm() < 1e-13);
        assert!((v.n_x - c(1.204_660_495_522_692_2, -2.468_439_065_600_178)).norm() < 1e-12);
        assert!((v.n_xx - c(6.606_453_369_085_266_3, -18.263_216_909_939_013)).norm() < 1e-11);
    }

    #[test]
    fn normalized_frame_reference_values() {
        // 40-digit numerical derivatives of arg D and ln |D|
        let (s, n) = steep();
        let (u, eta) = real_fields(1.0, 1.0, &s, &n, TAU_SINGULAR).unwrap();
        assert!((u - (-0.313_527_030_763_678)).abs() < 1e-13, "{u}");
        assert!((eta - (-0.596_019_891_620_172_4)).abs() < 1e-13, "{eta}");
        let (u, eta) = real_fields(0.0, 1.0, &s, &n, TAU_SINGULAR).unwrap();
        assert!(u.abs() < 1e-14);
        assert!((eta - (-0.243_438_914_352_606_1)).abs() < 1e-13, "{eta}");
    }

    #[test]
    fn n_conjugate_symmetry_and_far_field() {
        let (s, n) = steep();
        for (x, t) in [(1.0, 1.0), (-6.0, 3.0), (2.5, -15.0)] {
            let a = n_value(x, t, SigmaBranch::Plus, &s, &n).unwrap();
            let b = n_value(x, t, SigmaBranch::Minus, &s, &n).unwrap();
            assert!((a.n - b.n.conj()).norm() < 1e-12 * (1.0 + a.n.norm()));
            assert!((a.n_x - b.n_x.conj()).norm() < 1e-11 * (1.0 + a.n_x.norm()));
        }
        let far = n_value(60.0, 1.0, SigmaBranch::Plus, &s, &n).unwrap();
        assert!((far.n - 1.0).norm() < 1e-12 && far.n_x.norm() < 1e-11);
    }

    #[test]
    fn n_derivatives_match_finite_differences() {
        let (s, n) = steep();
        let f = |x: f64| n_value(x, 1.0, SigmaBranch::Plus, &s, &n).unwrap();
        for x in [-2.0, 0.3, 1.0, 3.7] {
            let v = f(x);
            let d1 = |h: f64| (f(x + h).n - f(x - h).n) / (2.0 * h);
            let rich = (4.0 * d1(5e-4) - d1(1e-3)) / 3.0;
            assert!((rich - v.n_x).norm() < 1e-8 * (1.0 + v.n_x.norm()));
            // plain central differences converge at order 2
            let e1 = (d1(2e-3) - v.n_x).norm();
            let e2 = (d1(1e-3) - v.n_x).norm();
            assert!(e1 / e2 > 3.5 && e1 / e2 < 4.5, "{}", e1 / e2);
            let h = 1e-3;
            let d2 = |h: f64| (f(x + h).n - 2.0 * f(x).n + f(x - h).n) / (h * h);
            let rich = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
            assert!((rich - v.n_xx).norm() < 1e-6 * (1.0 + v.n_xx.norm()));
        }
    }

    #[test]
    fn n_rejects_gamma_zero() {
        // the normalized frame puts xi_0 = 0 and theta_0 = theta_1 at the origin
        let (s, n) = steep();
        let p = phases(0.0, 0.0, SigmaBranch::Plus, &s, &n);
        assert!(gamma(&p, &s).gamma.abs() < 1e-15);
        assert!(matches!(n_value(0.0, 0.0, SigmaBranch::Plus, &s, &n), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn fields_vanish_far_away() {
        let (s, n) = steep();
        for x in [-80.0, 80.0] {
            let (u, eta) = real_fields(x, 1.0, &s, &n, TAU_SINGULAR).unwrap();
            assert!(u.abs() < 1e-12 && eta.abs() < 1e-12);
        }
    }

    #[test]
    fn velocity_is_sigma_independent_and_real() {
        let (s, n) = steep();
        for (x, t) in [(1.0, 1.0), (-7.0, -15.0), (3.0, 11.0), (0.0, 0.5)] {
            let z = Complex64::new(x, 0.0);
            let a = field_value(z, t, SigmaBranch::Plus, &s, &n, TAU_SINGULAR).unwrap();
            let b = field_value(z, t, SigmaBranch::Minus, &s, &n, TAU_SINGULAR).unwrap();
            assert!((a.u - b.u).norm() < 1e-12 * (1.0 + a.u.norm()));
            assert!((a.eta - b.eta).norm() < 1e-12 * (1.0 + a.eta.norm()));
            assert!(a.u.im.abs() < 1e-12 * (1.0 + a.u.re.abs()));
            assert!(a.eta.im.abs() < 1e-12 * (1.0 + a.eta.re.abs()));
        }
    }

    #[test]
    fn velocity_reference_value() {
        // unshifted frame with the normalized x0: u(1, 1) recomputed at 30 digits
        let (s, n) = steep();
        let plain = NormingConstant::new(n.x0, n.t0);
        let u = velocity(1.0, 1.0, &s, &plain).unwrap();
        assert!((u - (-0.8597526186)).abs() < 1e-9, "{u}");
        let eta = elevation(1.0, 1.0, &s, &plain).unwrap();
        assert!((eta - (-0.2650204703)).abs() < 1e-9, "{eta}");
    }

    #[test]
    fn velocity_vanishes_identically_at_zero_time() {
        let (s, n) = steep();
        for x in [-5.0, -1.3, 0.7, 4.2] {
            assert!(velocity(x, 0.0, &s, &n).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn zero_time_profiles_are_symmetric() {
        let (s, n) = steep();
        for x in [0.37, 1.1, 2.9, 6.4, 13.0] {
            let a = elevation(x, 0.0, &s, &n).unwrap();
            let b = elevation(-x, 0.0, &s, &n).unwrap();
            assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()), "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn symmetry_holds_at_other_times_in_shifted_frame() {
        let (s, n) = steep();
        for t in [-15.0, 1.0, 11.0] {
            for x in [0.5, 3.0, 9.0] {
                let (ua, ea) = real_fields(x, t, &s, &n, TAU_SINGULAR).unwrap();
                let (ub, eb) = real_fields(-x, t, &s, &n, TAU_SINGULAR).unwrap();
                assert!((ua + ub).abs() < 1e-9 * (1.0 + ua.abs()));
                assert!((ea - eb).abs() < 1e-9 * (1.0 + ea.abs()));
            }
        }
    }

    #[test]
    fn log_n_elevation_differs_from_elevation() {
        let (s, n) = steep();
        let plain = NormingConstant::new(n.x0, n.t0);
        let a = log_n_elevation(1.0, 1.0, SigmaBranch::Plus, &s, &plain).unwrap();
        let b = elevation(1.0, 1.0, &s, &plain).unwrap();
        assert!((a - b).abs() > 1.0);
    }

    #[test]
    fn elevation_integral_matches_trapezoid() {
        let (s, n) = steep();
        let (a, b, h) = (-20.0, 20.0, 1e-3);
        let m = ((b - a) / h) as usize;
        let mut sum = 0.0;
        for i in 0..=m {
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            sum += w * elevation(a + i as f64 * h, 1.0, &s, &n).unwrap();
        }
        let exact = elevation_integral(a, b, 1.0, &s, &n);
        assert!((sum * h - exact).abs() < 1e-5, "{} vs {exact}", sum * h);
        let later = elevation_integral(-60.0, 60.0, 11.0, &s, &n);
        let earlier = elevation_integral(-60.0, 60.0, -15.0, &s, &n);
        assert!((later - earlier).abs() < 1e-12);
    }

    #[test]
    fn identity_check_holds() {
        let (s, n) = steep();
        for (x, t) in [(1.0, 1.0), (-2.0, 0.4), (3.0, -1.5), (0.2, 11.0)] {
            for sigma in SigmaBranch::BOTH {
                let r = g_psi_identity_check(x, t, sigma, &s, &n).unwrap();
                assert!(r < 1e-8, "({x}, {t}): {r:e}");
            }
        }
        let far = g_psi_identity_check(50.0, 1.0, SigmaBranch::Plus, &s, &n).unwrap();
        assert!(far < 1e-12);
    }

    #[test]
    fn grid_validation() {
        let ok = GridSpec { x_min: -1.0, x_max: 1.0, x_step: 0.5, times: vec![0.0] };
        assert!(ok.validate().is_ok());
        assert_eq!(ok.x_nodes(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let mut bad = ok.clone();
        bad.times.clear();
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.x_step = 0.3;
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.x_max = -2.0;
        assert!(bad.validate().is_err());
        let mut bad = ok;
        bad.x_step = 0.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn one_node_grid_matches_pointwise() {
        let (s, n) = steep();
        let g = GridSpec { x_min: 1.5, x_max: 1.5, x_step: 0.1, times: vec![2.0] };
        let v = evaluate_grid(&g, &s, &n, TAU_SINGULAR).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].u, velocity(1.5, 2.0, &s, &n).unwrap());
        assert_eq!(v[0].eta, elevation(1.5, 2.0, &s, &n).unwrap());
        assert!(!v[0].singular);
    }

    #[test]
    fn zero_time_grid_flags_singular_node() {
        let (s, n) = steep();
        let g = GridSpec { x_min: -1.0, x_max: 1.0, x_step: 0.5, times: vec![0.0, 1.0] };
        let v = evaluate_grid(&g, &s, &n, TAU_SINGULAR).unwrap();
        assert_eq!(v.len(), 10);
        assert!(v[2].singular && v[2].u.is_nan() && v[2].eta.is_nan());
        assert!(v[5..].iter().all(|f| !f.singular && f.u.is_finite()));
        assert_eq!((v[4].t, v[5].t), (0.0, 1.0));
    }

    proptest! {
        #[test]
        fn sigma_flip_is_conjugation(x in -15.0f64..15.0, t in -12.0f64..12.0,
                                      mu in 0.1f64..1.0, nu in 0.1f64..1.0) {
            let s = make_spectrum(mu, nu).unwrap();
            let n = normalize_phases(&s);
            let a = tau(Complex64::new(x, 0.0), t, SigmaBranch::Plus, &s, &n);
            let b = tau(Complex64::new(x, 0.0), t, SigmaBranch::Minus, &s, &n);
            prop_assert!((a.scaled - b.scaled.conj()).norm() < 1e-12);
        }

        #[test]
        fn fields_are_real(x in -15.0f64..15.0, t in 0.5f64..12.0) {
            let (s, n) = steep();
            if let Ok(f) = field_value(Complex64::new(x, 0.0), t, SigmaBranch::Plus, &s, &n, TAU_SINGULAR) {
                prop_assert!(f.u.im.abs() <= 1e-10 * f.u.re.abs().max(1.0));
                prop_assert!(f.eta.im.abs() <= 1e-10 * f.eta.re.abs().max(1.0));
            }
        }
    }
}
