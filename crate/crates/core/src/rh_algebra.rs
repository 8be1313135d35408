//! Discrete Riemann–Hilbert algebra of the two-pole reflectionless problem.
//!
//! With `Psi = (psi(x, conj(lambda_1)), psi(x, -lambda_1))` the residue
//! conditions reduce to `Psi = e - T . conj(Psi)`, whose solution is
//! `conj(Psi) = (conj(T)^-1 - T)^-1 . (conj(T)^-1 - 1) . e`.
//!
//! The unit-modulus factor `e^{2 i sigma omega_+}` is an explicit input so
//! that identities can be checked phase-stripped (`omega_plus = 0`) or with
//! the physical charge supplied by [`crate::fields`].
//!
//! Large phases are handled by scaling every exponential by `e^{-M}` with
//! `M = max(2|xi_0|, 2|Xi|)`, the dominant growth of `Gamma`; the closed-form
//! Jost vector is a ratio of such terms and stays O(1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::spectrum::{PhaseState, SigmaBranch, SpectralPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Real determinant function whose zeros are the poles of `N` and of the
/// discrete Jost vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    /// `Gamma` itself; `+-inf` once the dominant exponential overflows.
    pub gamma: f64,
    /// `Gamma e^{-log_scale}`
    pub mantissa: f64,
    /// `max(2|xi_0|, 2|Xi|)`, always `>= 0`.
    pub log_scale: f64,
}

impl GammaValue {
    /// Singularity test relative to the dominant scale, i.e.
    /// `|Gamma| < tol * max(1, e^{log_scale})`.
    pub fn is_singular(&self, tol: f64) -> bool {
        !(self.mantissa.abs() >= tol)
    }

    fn check(&self, tol: f64) -> Result<()> {
        if self.is_singular(tol) {
            Err(Error::SingularPoint { gamma: self.gamma, tolerance: tol })
        } else {
            Ok(())
        }
    }
}

fn log_scale(p: &PhaseState) -> f64 {
    (2.0 * p.xi0.abs()).max(2.0 * p.big_xi.abs())
}

/// `cosh(y) e^{-m}` without intermediate overflow.
fn cosh_scaled(y: f64, m: f64) -> f64 {
    0.5 * ((y - m).exp() + (-y - m).exp())
}

/// `Gamma = 2 sinh xi_+ sinh xi_- + (nu^2/l^2)(cos 2(theta_0 - theta_1) - cosh 2 xi_0)`.
pub fn gamma(p: &PhaseState, s: &SpectralPoint) -> GammaValue {
    let m = log_scale(p);
    let nl2 = (s.nu / s.l).powi(2);
    let ml2 = (s.mu / s.l).powi(2);
    let osc = (2.0 * (p.theta0 - s.theta1)).cos();
    // 2 sinh a sinh b = cosh(a + b) - cosh(a - b)
    let mantissa =
        ml2 * cosh_scaled(2.0 * p.xi0, m) - cosh_scaled(2.0 * p.big_xi, m) + nl2 * osc * (-m).exp();
    let gamma = if m < 600.0 {
        2.0 * p.xi_plus.sinh() * p.xi_minus.sinh() + nl2 * (osc - (2.0 * p.xi0).cosh())
    } else {
        mantissa * m.exp()
    };
    GammaValue { gamma, mantissa, log_scale: m }
}

/// A 2x2 matrix carried as phase-free entries times `e^{i phase_exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub entries: Mat2,
    pub phase_exponent: f64,
}

impl TransferMatrix {
    pub fn matrix(&self) -> Mat2 {
        self.entries.scale(cis(self.phase_exponent))
    }

    pub fn det(&self) -> Complex64 {
        self.matrix().det()
    }
}

/// `T = (l/mu) [[e^{-xi_+} e^{i theta_+}, conj(beta) e^{-xi_-} e^{-i theta_-}],
///              [beta e^{-xi_+} e^{i theta_+}, e^{-xi_-} e^{-i theta_-}]] e^{2 i sigma omega_+}`
pub fn transfer_matrix(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
) -> TransferMatrix {
    let k = s.scale();
    let left = Complex64::from_polar(k * (-p.xi_plus).exp(), p.theta_plus);
    let right = Complex64::from_polar(k * (-p.xi_minus).exp(), -p.theta_minus);
    TransferMatrix {
        entries: Mat2::new(left, s.beta.conj() * right, s.beta * left, right),
        phase_exponent: 2.0 * sigma.value() * omega_plus,
    }
}

/// Closed form of `conj(T)^-1`:
/// `(l/mu) [[e^{xi_+} e^{i theta_+}, -beta e^{xi_+} e^{i theta_+}],
///          [-conj(beta) e^{xi_-} e^{-i theta_-}, e^{xi_-} e^{-i theta_-}]] e^{2 i sigma omega_+}`.
///
/// Fails when `|det T| = e^{-2 xi_0}` drops below `1e-300`.
pub fn inverse_conjugate_transfer(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
) -> Result<TransferMatrix> {
    let log_det = -2.0 * p.xi0;
    if log_det < 1e-300f64.ln() {
        return Err(Error::DeterminantUnderflow { log_det });
    }
    let k = s.scale();
    let top = Complex64::from_polar(k * p.xi_plus.exp(), p.theta_plus);
    let bottom = Complex64::from_polar(k * p.xi_minus.exp(), -p.theta_minus);
    Ok(TransferMatrix {
        entries: Mat2::new(top, -s.beta * top, -s.beta.conj() * bottom, bottom),
        phase_exponent: 2.0 * sigma.value() * omega_plus,
    })
}

/// `det(conj(T)^-1 - T) = 2 (l^2/mu^2) Gamma e^{i(theta_+ - theta_-)} e^{4 i sigma omega_+}`.
pub fn difference_determinant(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
) -> Complex64 {
    let g = gamma(p, s).gamma;
    let phase = p.theta_plus - p.theta_minus + 4.0 * sigma.value() * omega_plus;
    cis(phase) * (2.0 * s.scale().powi(2) * g)
}

/// Values of the augmented Jost function at `conj(lambda_1)` and `-lambda_1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostVector {
    pub psi_plus: Complex64,
    pub psi_minus: Complex64,
}

impl JostVector {
    pub fn as_vec(&self) -> Vec2 {
        Vec2([self.psi_plus, self.psi_minus])
    }

    fn from_vec(v: Vec2) -> Self {
        JostVector { psi_plus: v.0[0], psi_minus: v.0[1] }
    }
}

/// Explicit discrete Jost vector.
///
/// The printed closed form `(1/2Gamma)(...) - (mu/2l Gamma)(...) e^{-2i sigma omega_+}`
/// is the product `(conj(T)^-1 - T)^-1 (conj(T)^-1 - 1) e`, i.e. `conj(Psi)`;
/// it is conjugated before being returned.
pub fn jost_closed_form(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
    tol: f64,
) -> Result<JostVector> {
    let g = gamma(p, s);
    g.check(tol)?;
    let m = g.log_scale;
    let b = s.beta;
    let bc = b.conj();
    let one = real(1.0);
    let e = |y: f64| (y - m).exp();
    let sinh_s = |y: f64| 0.5 * (e(y) - e(-y));

    let grow = e(2.0 * p.xi0);
    // e^{xi_+} sinh xi_- and e^{xi_-} sinh xi_+, scaled
    let row1 = (one - b) * (grow - e(-2.0 * p.big_xi))
        + bc * (one - bc) * cis(-2.0 * p.theta0) * e(0.0)
        + b * (one - bc) * grow;
    let row2 = (one - bc) * (grow - e(2.0 * p.big_xi))
        + b * (one - b) * cis(2.0 * p.theta0) * e(0.0)
        + bc * (one - b) * grow;
    let first = Vec2([row1, row2]).scale(real(0.5 / g.mantissa));

    let col1 = 2.0 * cis(-p.theta_plus) * sinh_s(p.xi_minus)
        + bc * cis(-p.theta_plus) * e(-p.xi_minus)
        + b * cis(p.theta_minus) * e(p.xi_plus);
    let col2 = 2.0 * cis(p.theta_minus) * sinh_s(p.xi_plus)
        + bc * cis(-p.theta_plus) * e(p.xi_minus)
        + b * cis(p.theta_minus) * e(-p.xi_plus);
    let factor = cis(-2.0 * sigma.value() * omega_plus) * (0.5 / (s.scale() * g.mantissa));
    let second = Vec2([col1, col2]).scale(factor);

    Ok(JostVector::from_vec((first - second).conj()))
}

/// Discrete Jost vector from the 2x2 system, solved by cofactors.
pub fn jost_linear_solve(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
    tol: f64,
) -> Result<JostVector> {
    let g = gamma(p, s);
    g.check(tol)?;
    let t = transfer_matrix(p, s, sigma, omega_plus).matrix();
    let tinv = inverse_conjugate_transfer(p, s, sigma, omega_plus)?.matrix();
    let rhs = (tinv - Mat2::identity()).apply(&Vec2::ones());
    let psi_bar = (tinv - t).solve(&rhs).ok_or(Error::SingularPoint { gamma: g.gamma, tolerance: tol })?;
    Ok(JostVector::from_vec(psi_bar.conj()))
}

/// `(f_+, conj(f_-))`, the coefficients that multiply `conj(Psi)` in the
/// large-lambda expansion of the augmented Jost function.
pub fn pole_coefficients(p: &PhaseState, s: &SpectralPoint, sigma: SigmaBranch, omega_plus: f64) -> Vec2 {
    let k = s.scale();
    let phase = 2.0 * sigma.value() * omega_plus;
    Vec2([
        Complex64::from_polar(k * (-p.xi_plus).exp(), p.theta_plus + phase),
        Complex64::from_polar(k * (-p.xi_minus).exp(), -p.theta_minus + phase),
    ])
}

/// `psi(x, 0, sigma) = 1 - 2 f . conj(Psi)` with
/// `f = (l/mu)(beta e^{-xi_+} e^{i theta_+}, conj(beta) e^{-xi_-} e^{-i theta_-}) e^{2 i sigma omega_+}`.
pub fn psi_at_lambda_zero(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
    tol: f64,
) -> Result<Complex64> {
    let psi = jost_closed_form(p, s, sigma, omega_plus, tol)?;
    let g = pole_coefficients(p, s, sigma, omega_plus);
    let f = Vec2([s.beta * g.0[0], s.beta.conj() * g.0[1]]);
    Ok(real(1.0) - 2.0 * f.dot(&psi.as_vec().conj()))
}

/// Expanded form of [`psi_at_lambda_zero`]:
/// `1 + (2/Gamma)((nu^2/l^2)(cosh 2Xi - cos 2(theta_0 - theta_1)) + i (mu nu/l^2) sinh 2Xi)
///    - i (2/Gamma)(mu nu/l^2)(sinh xi_- e^{i(theta_+ - theta_1)} - sinh xi_+ e^{-i(theta_- - theta_1)}) e^{2 i sigma omega_+}`.
pub fn psi_at_lambda_zero_expanded(
    p: &PhaseState,
    s: &SpectralPoint,
    sigma: SigmaBranch,
    omega_plus: f64,
    tol: f64,
) -> Result<Complex64> {
    let g = gamma(p, s);
    g.check(tol)?;
    let l2 = s.l * s.l;
    let nl2 = s.nu * s.nu / l2;
    let mnl2 = s.mu * s.nu / l2;
    let phi = p.theta0 - s.theta1;
    let even =
        Complex64::new(nl2 * ((2.0 * p.big_xi).cosh() - (2.0 * phi).cos()), mnl2 * (2.0 * p.big_xi).sinh());
    let odd = p.xi_minus.sinh() * cis(p.theta_plus - s.theta1)
        - p.xi_plus.sinh() * cis(-(p.theta_minus - s.theta1));
    let phase = cis(2.0 * sigma.value() * omega_plus);
    // the phase-carrying part scales with l/|mu|, the rest does not
    let odd_coeff = s.mu.abs() * s.nu / l2;
    Ok(real(1.0) + (2.0 / g.gamma) * even - I * (2.0 * odd_coeff / g.gamma) * odd * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{make_spectrum, normalize_phases, phases, NormingConstant};
    use crate::tolerances::GAMMA_SINGULAR;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
    }

    struct Sample {
        s: SpectralPoint,
        p: PhaseState,
        sigma: SigmaBranch,
        omega: f64,
    }

    fn samples(n: usize, seed: u64) -> Vec<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mu = rng.gen_range(0.05..2.0) * if rng.gen_bool(0.2) { -1.0 } else { 1.0 };
            let s = make_spectrum(mu, rng.gen_range(0.05..2.0)).unwrap();
            let nc = NormingConstant::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
            let sigma = if rng.gen_bool(0.5) { SigmaBranch::Plus } else { SigmaBranch::Minus };
            let p = phases(rng.gen_range(-6.0..6.0), rng.gen_range(-3.0..3.0), sigma, &s, &nc);
            if p.xi_plus.abs().max(p.xi_minus.abs()) > 12.0 {
                continue;
            }
            if gamma(&p, &s).mantissa.abs() < 1e-6 {
                continue;
            }
            out.push(Sample { s, p, sigma, omega: rng.gen_range(-3.0..3.0) });
        }
        out
    }

    #[test]
    fn gamma_at_zero_phases() {
        let s = make_spectrum(0.3, 0.8).unwrap();
        let nl2 = (s.nu / s.l).powi(2);
        for theta0 in [0.0, 0.4, 1.3, s.theta1, s.theta1 + std::f64::consts::PI] {
            let p = PhaseState::from_components(0.0, 0.0, theta0, theta0);
            let g = gamma(&p, &s).gamma;
            let expected = nl2 * ((2.0 * (theta0 - s.theta1)).cos() - 1.0);
            assert!((g - expected).abs() < 1e-15);
            assert!(g <= 1e-16);
        }
        let p = PhaseState::from_components(0.0, 0.0, s.theta1, s.theta1);
        assert!(gamma(&p, &s).gamma.abs() < 1e-16);
    }

    #[test]
    fn gamma_at_zero_time() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = NormingConstant::new(0.4, 0.0);
        let nl2 = (s.nu / s.l).powi(2);
        for x in [-2.0, -0.3, 0.9, 3.1] {
            let p = phases(x, 0.0, SigmaBranch::Plus, &s, &n);
            let expected = 2.0 * p.xi0.sinh().powi(2)
                + nl2 * ((2.0 * (p.theta0 - s.theta1)).cos() - (2.0 * p.xi0).cosh());
            assert!((gamma(&p, &s).gamma - expected).abs() < 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn gamma_scaled_form_matches_printed_form() {
        for smp in samples(200, 3) {
            let g = gamma(&smp.p, &smp.s);
            let rebuilt = g.mantissa * g.log_scale.exp();
            assert!((rebuilt - g.gamma).abs() < 1e-11 * (1.0 + g.gamma.abs()));
        }
    }

    #[test]
    fn gamma_survives_huge_phases() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let p = PhaseState::from_components(900.0, 901.0, 0.3, 0.2);
        let g = gamma(&p, &s);
        assert!(g.mantissa.is_finite() && g.mantissa > 0.0);
        assert!(!g.is_singular(GAMMA_SINGULAR));
    }

    #[test]
    fn gamma_positive_in_far_field() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        for x in [15.0, 25.0, 40.0] {
            let p = phases(x, 1.0, SigmaBranch::Plus, &s, &n);
            let g = gamma(&p, &s);
            let leading = 0.5 * (1.0 - (s.nu / s.l).powi(2)) * (2.0 * p.xi0).exp();
            assert!(g.gamma > 0.0);
            assert!((g.gamma / leading - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn gamma_sigma_time_flip() {
        let s = make_spectrum(0.7, 0.35).unwrap();
        let n = NormingConstant::new(0.2, 0.0);
        for (x, t) in [(0.1, 0.4), (-1.5, 2.0), (2.2, -0.7)] {
            let a = gamma(&phases(x, t, SigmaBranch::Plus, &s, &n), &s).gamma;
            let b = gamma(&phases(x, -t, SigmaBranch::Minus, &s, &n), &s).gamma;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn determinant_identity() {
        for smp in samples(300, 11) {
            let t = transfer_matrix(&smp.p, &smp.s, smp.sigma, smp.omega);
            let expected = Complex64::from_polar(
                (-2.0 * smp.p.xi0).exp(),
                smp.p.theta_plus - smp.p.theta_minus + 4.0 * smp.sigma.value() * smp.omega,
            );
            assert!((t.det() - expected).norm() < 1e-12 * (1.0 + expected.norm()));
        }
    }

    #[test]
    fn off_diagonal_vanishes_with_beta() {
        let mut prev = f64::INFINITY;
        for nu in [1e-2, 1e-3, 1e-4] {
            let s = make_spectrum(1.0, nu).unwrap();
            let p = PhaseState::from_components(0.2, -0.1, 0.4, 1.1);
            let t = transfer_matrix(&p, &s, SigmaBranch::Plus, 0.0).entries;
            let off = t.0[0][1].norm().max(t.0[1][0].norm());
            let diag = t.0[0][0].norm().max(t.0[1][1].norm());
            assert!((off / diag) <= s.beta.norm() * 1.0001);
            assert!(off < prev);
            prev = off;
        }
    }

    #[test]
    fn transfer_matrix_from_norming_constant() {
        // T assembled directly from R_1(0, sigma)/(2 nu) = e^{x0 + i sigma t0}
        // and f_± = (R_1(0,±sigma)/2nu) e^{2i(lambda_1 x ∓ sigma lambda_1^2 t)} e^{±2i sigma omega}
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        for (x, t, omega) in [(0.0, 0.0, 0.0), (0.7, -0.4, 0.3), (-1.2, 1.1, -2.0)] {
            for sigma in SigmaBranch::BOTH {
                let sg = sigma.value();
                let lam = s.lambda();
                let xx = x + n.x_shift;
                let f_plus = (real(n.x0) + I * sg * n.t0).exp()
                    * (2.0 * I * (lam * xx - sg * lam * lam * t)).exp()
                    * cis(2.0 * sg * omega);
                let f_minus = (real(n.x0) - I * sg * n.t0).exp()
                    * (2.0 * I * (lam * xx + sg * lam * lam * t)).exp()
                    * cis(-2.0 * sg * omega);
                let direct =
                    Mat2::new(f_plus, s.beta.conj() * f_minus.conj(), s.beta * f_plus, f_minus.conj());
                let p = phases(x, t, sigma, &s, &n);
                let built = transfer_matrix(&p, &s, sigma, omega).matrix();
                assert!((built - direct).max_norm() < 1e-13 * (1.0 + direct.max_norm()));
            }
        }
    }

    #[test]
    fn inverse_conjugate_is_inverse() {
        for smp in samples(300, 17) {
            let t = transfer_matrix(&smp.p, &smp.s, smp.sigma, smp.omega).matrix();
            let tinv = inverse_conjugate_transfer(&smp.p, &smp.s, smp.sigma, smp.omega).unwrap().matrix();
            let product = tinv * t.conj();
            let scale = tinv.max_norm() * t.max_norm();
            assert!((product - Mat2::identity()).max_norm() < 1e-10 * (1.0 + scale));
            let numeric = t.conj().inverse().unwrap();
            assert!((numeric - tinv).max_norm() < 1e-10 * (1.0 + tinv.max_norm()));
        }
    }

    #[test]
    fn inverse_conjugate_rejects_underflow() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let p = PhaseState::from_components(400.0, 400.0, 0.0, 0.0);
        assert!(matches!(
            inverse_conjugate_transfer(&p, &s, SigmaBranch::Plus, 0.0),
            Err(Error::DeterminantUnderflow { .. })
        ));
    }

    #[test]
    fn difference_determinant_identity() {
        for smp in samples(300, 23) {
            let t = transfer_matrix(&smp.p, &smp.s, smp.sigma, smp.omega).matrix();
            let tinv = inverse_conjugate_transfer(&smp.p, &smp.s, smp.sigma, smp.omega).unwrap().matrix();
            let numeric = (tinv - t).det();
            let closed = difference_determinant(&smp.p, &smp.s, smp.sigma, smp.omega);
            let scale = (tinv.max_norm() + t.max_norm()).powi(2);
            assert!((numeric - closed).norm() < 1e-10 * scale.max(closed.norm()));
        }
    }

    #[test]
    fn closed_form_matches_linear_solve() {
        let mut worst: f64 = 0.0;
        for smp in samples(1000, 29) {
            let a = jost_closed_form(&smp.p, &smp.s, smp.sigma, smp.omega, GAMMA_SINGULAR).unwrap();
            let b = jost_linear_solve(&smp.p, &smp.s, smp.sigma, smp.omega, GAMMA_SINGULAR).unwrap();
            let d = (a.as_vec() - b.as_vec()).max_norm() / (1.0 + b.as_vec().max_norm());
            worst = worst.max(d);
        }
        assert!(worst < 1e-10, "worst relative gap {worst:e}");
    }

    #[test]
    fn linear_solve_satisfies_defining_system() {
        for smp in samples(300, 31) {
            let psi = jost_linear_solve(&smp.p, &smp.s, smp.sigma, smp.omega, GAMMA_SINGULAR).unwrap();
            let t = transfer_matrix(&smp.p, &smp.s, smp.sigma, smp.omega).matrix();
            let residual = psi.as_vec() - (Vec2::ones() - t.apply(&psi.as_vec().conj()));
            let scale = 1.0 + t.max_norm() * psi.as_vec().max_norm();
            assert!(residual.max_norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn jost_vector_tends_to_one_in_far_field() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        for sigma in SigmaBranch::BOTH {
            // |Psi - e| ~ e^{-xi}; with nu = 0.5, x = 25 leaves ~e^{-25}
            for x in [25.0, 40.0, 400.0, 1200.0] {
                let p = phases(x, 0.7, sigma, &s, &n);
                let psi = jost_closed_form(&p, &s, sigma, 0.3, GAMMA_SINGULAR).unwrap();
                assert!((psi.as_vec() - Vec2::ones()).max_norm() < 1e-8, "x = {x}");
                if x < 300.0 {
                    let lin = jost_linear_solve(&p, &s, sigma, 0.3, GAMMA_SINGULAR).unwrap();
                    assert!((lin.as_vec() - Vec2::ones()).max_norm() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn singular_point_is_reported() {
        let s = make_spectrum(0.3, 0.8).unwrap();
        let p = PhaseState::from_components(0.0, 0.0, s.theta1, s.theta1);
        assert!(matches!(
            jost_closed_form(&p, &s, SigmaBranch::Plus, 0.0, GAMMA_SINGULAR),
            Err(Error::SingularPoint { .. })
        ));
        assert!(matches!(
            jost_linear_solve(&p, &s, SigmaBranch::Plus, 0.0, GAMMA_SINGULAR),
            Err(Error::SingularPoint { .. })
        ));
        assert!(psi_at_lambda_zero(&p, &s, SigmaBranch::Plus, 0.0, GAMMA_SINGULAR).is_err());
    }

    #[test]
    fn psi_at_zero_two_routes_agree() {
        for smp in samples(500, 37) {
            let a = psi_at_lambda_zero(&smp.p, &smp.s, smp.sigma, smp.omega, GAMMA_SINGULAR).unwrap();
            let b =
                psi_at_lambda_zero_expanded(&smp.p, &smp.s, smp.sigma, smp.omega, GAMMA_SINGULAR).unwrap();
            assert!(close(a, b, 1e-10), "{a} vs {b} mu {}", smp.s.mu);
        }
    }

    #[test]
    fn psi_at_zero_far_field() {
        let s = make_spectrum(0.6, 0.4).unwrap();
        let n = normalize_phases(&s);
        let p = phases(60.0, 0.5, SigmaBranch::Minus, &s, &n);
        let v = psi_at_lambda_zero(&p, &s, SigmaBranch::Minus, 0.2, GAMMA_SINGULAR).unwrap();
        assert!((v - real(1.0)).norm() < 1e-12);
    }
    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // reference values below come from an independent 40-digit evaluation

    #[test]
    fn frozen_gamma_at_one_one() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        let p = phases(1.0, 1.0, SigmaBranch::Plus, &s, &n);
        let g = gamma(&p, &s).gamma;
        assert!((g - (-0.358_399_651_904_005_7)).abs() < 1e-14, "{g}");
        // the same number from the difference determinant with phases stripped
        let t = transfer_matrix(&p, &s, SigmaBranch::Plus, 0.0).matrix();
        let tinv = inverse_conjugate_transfer(&p, &s, SigmaBranch::Plus, 0.0).unwrap().matrix();
        let d = (tinv - t).det() * cis(-(p.theta_plus - p.theta_minus)) / (2.0 * s.scale().powi(2));
        assert!((d - g).norm() < 1e-13);
    }

    #[test]
    fn frozen_transfer_matrices_at_origin() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        let p = phases(0.0, 0.0, SigmaBranch::Plus, &s, &n);
        let expected = Mat2::new(c(1.0, 2.0), c(0.0, -2.0), c(0.0, 2.0), c(1.0, -2.0));
        let t = transfer_matrix(&p, &s, SigmaBranch::Plus, 0.0).matrix();
        let tinv = inverse_conjugate_transfer(&p, &s, SigmaBranch::Plus, 0.0).unwrap().matrix();
        assert!((t - expected).max_norm() < 1e-14, "{t:?}");
        // T is its own conjugate inverse here, which is why Gamma vanishes at the origin
        assert!((tinv - expected).max_norm() < 1e-14, "{tinv:?}");
        let numeric = t.conj().inverse().unwrap();
        assert!((numeric - tinv).max_norm() < 1e-13);
    }

    #[test]
    fn frozen_jost_vector() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        let omega = crate::fields::omega_plus(1.0, 0.0, SigmaBranch::Plus, &s, &n).unwrap();
        let p = phases(1.0, 0.0, SigmaBranch::Plus, &s, &n);
        let psi = jost_closed_form(&p, &s, SigmaBranch::Plus, omega, GAMMA_SINGULAR).unwrap();
        assert!((psi.psi_plus - c(4.253_982_611_371_336, -1.107_985_395_393_500_5)).norm() < 1e-12);
        assert!((psi.psi_minus - c(4.253_982_611_371_336, 1.107_985_395_393_500_5)).norm() < 1e-12);
    }

    #[test]
    fn frozen_psi_at_lambda_zero() {
        let s = make_spectrum(0.25, 0.5).unwrap();
        let n = normalize_phases(&s);
        let omega = crate::fields::omega_plus(0.5, 0.2, SigmaBranch::Plus, &s, &n).unwrap();
        let p = phases(0.5, 0.2, SigmaBranch::Plus, &s, &n);
        let expected = c(2.124_192_326_881_652, -3.375_256_491_260_034_3);
        let a = psi_at_lambda_zero(&p, &s, SigmaBranch::Plus, omega, GAMMA_SINGULAR).unwrap();
        let b = psi_at_lambda_zero_expanded(&p, &s, SigmaBranch::Plus, omega, GAMMA_SINGULAR).unwrap();
        // omega comes from a walk of a few hundred unwrapped increments
        assert!((a - expected).norm() < 1e-11, "{a}");
        assert!((b - expected).norm() < 1e-11, "{b}");
    }
}
