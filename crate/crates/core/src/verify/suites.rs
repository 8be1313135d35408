//! Named groups of checks run by `kbsoliton verify` and the acceptance tests.
//!
//! Every check records the measured value next to its threshold. Checks with
//! `enforced = false` are diagnostics: they are reported but do not decide
//! the outcome of the suite.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::residual::{convergence_study, ConvergenceStudy, StencilOrder};
use super::scatter::{spectrum_from_samples, Contour, SampledPotential, ScatterConfig, SolitonPotential};
use crate::error::{Error, Result};
use crate::fields::{
    far_left_charge, field_value, g_psi_identity_check, log_n_elevation, omega_plus, real_fields, tau,
    GridSpec,
};
use crate::rh_algebra::{
    difference_determinant, gamma, inverse_conjugate_transfer, jost_closed_form, jost_linear_solve,
    transfer_matrix,
};
use crate::spectrum::{phases, NormingConstant, SigmaBranch, SpectralPoint};
use crate::tolerances as tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub enforced: bool,
    pub detail: String,
}

impl Check {
    /// Passes when `value < threshold`; NaN fails.
    pub fn below(name: &str, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            value,
            threshold,
            passed: value < threshold,
            enforced: true,
            detail: detail.into(),
        }
    }

    pub fn flag(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            value: if passed { 1.0 } else { 0.0 },
            threshold: 1.0,
            passed,
            enforced: true,
            detail: detail.into(),
        }
    }

    pub fn advisory(mut self) -> Self {
        self.enforced = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.enforced)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn time_span(times: &[f64]) -> (f64, f64) {
    let lo = times.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Random points for the Riemann–Hilbert identities.
#[derive(Debug, Clone, Copy)]
pub struct AlgebraSampling {
    pub samples: usize,
    pub seed: u64,
    /// Scaled `|Gamma|` below which a draw is rejected.
    pub min_gamma: f64,
    /// Pole tolerance handed to the Jost solvers.
    pub gamma_tol: f64,
}

impl Default for AlgebraSampling {
    fn default() -> Self {
        AlgebraSampling { samples: 1000, seed: 7, min_gamma: 1e-4, gamma_tol: tol::GAMMA_SINGULAR }
    }
}

/// Determinant identity, closed-form against solved Jost vector and the
/// `g . conj(Psi)` identity on random points of the grid's space-time box.
pub fn algebra_suite(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    sampling: &AlgebraSampling,
) -> Result<SuiteReport> {
    grid.validate()?;
    if sampling.samples == 0 {
        return Err(Error::Config("algebra suite needs at least one sample".into()));
    }
    let (t_lo, t_hi) = time_span(&grid.times);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let (mut det_err, mut jost_err, mut ident_err) = (0.0f64, 0.0f64, 0.0f64);
    let (mut taken, mut drawn) = (0usize, 0usize);
    while taken < sampling.samples {
        drawn += 1;
        if drawn > 100 * sampling.samples {
            return Err(Error::Config(format!("only {taken} admissible samples in {} draws", drawn - 1)));
        }
        let x = if grid.x_max > grid.x_min { rng.gen_range(grid.x_min..=grid.x_max) } else { grid.x_min };
        let t = if t_hi > t_lo { rng.gen_range(t_lo..=t_hi) } else { t_lo };
        let sigma = if rng.gen_bool(0.5) { SigmaBranch::Plus } else { SigmaBranch::Minus };
        let omega = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let p = phases(x, t, sigma, s, n0);
        // keep the 2x2 entries representable to full relative precision
        if p.xi_plus.abs().max(p.xi_minus.abs()) > 12.0 {
            continue;
        }
        if gamma(&p, s).mantissa.abs() < sampling.min_gamma {
            continue;
        }
        taken += 1;

        let t_mat = transfer_matrix(&p, s, sigma, omega).matrix();
        let tinv = inverse_conjugate_transfer(&p, s, sigma, omega)?.matrix();
        let direct = (tinv - t_mat).det();
        let closed = difference_determinant(&p, s, sigma, omega);
        det_err = det_err.max((direct - closed).norm() / closed.norm());

        let a = jost_closed_form(&p, s, sigma, omega, sampling.gamma_tol)?.as_vec();
        let b = jost_linear_solve(&p, s, sigma, omega, sampling.gamma_tol)?.as_vec();
        jost_err = jost_err.max((a - b).max_norm() / a.max_norm().max(b.max_norm()).max(1.0));

        ident_err = ident_err.max(g_psi_identity_check(x, t, sigma, s, n0)?);
    }
    let mut r = SuiteReport::new("algebra");
    let note = format!("{taken} samples, {drawn} draws, seed {}", sampling.seed);
    r.checks.push(Check::below("determinant_identity", det_err, tol::ALGEBRA_RELATIVE, note.clone()));
    r.checks.push(Check::below("jost_closed_form_vs_solve", jost_err, tol::ALGEBRA_RELATIVE, note.clone()));
    r.checks.push(Check::below("g_psi_identity", ident_err, 1e-8, note));
    Ok(r)
}

/// Thresholds for [`fields_suite`].
#[derive(Debug, Clone, Copy)]
pub struct FieldChecks {
    /// Stride through the x-nodes for the finite-difference route checks.
    pub route_stride: usize,
    /// FD step of the route checks.
    pub route_step: f64,
    /// The norming constant is the normalized one, so the t = 0 symmetry applies.
    pub normalized: bool,
}

impl Default for FieldChecks {
    fn default() -> Self {
        FieldChecks { route_stride: 10, route_step: 1e-3, normalized: true }
    }
}

/// Richardson-extrapolated central first derivative.
fn richardson_d1(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    Ok((4.0 * d(h)? - d(2.0 * h)?) / 3.0)
}

/// Richardson-extrapolated central second derivative.
fn richardson_d2(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    let f0 = f(x)?;
    let d = |h: f64| -> Result<f64> { Ok((f(x + h)? - 2.0 * f0 + f(x - h)?) / (h * h)) };
    Ok((4.0 * d(h)? - d(2.0 * h)?) / 3.0)
}

fn ln_abs_d(x: f64, t: f64, s: &SpectralPoint, n0: &NormingConstant) -> Result<f64> {
    let d = tau(Complex64::new(x, 0.0), t, SigmaBranch::Plus, s, n0);
    if d.is_singular(tol::TAU_SINGULAR) {
        return Err(Error::FieldSingularity { tau: d.scaled.norm(), tolerance: tol::TAU_SINGULAR });
    }
    Ok(d.scaled.norm().ln() + d.log_scale)
}

/// Reality, branch independence, the charge and log routes, the t = 0
/// symmetry and conservation of the far-left charge.
pub fn fields_suite(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    opts: &FieldChecks,
) -> Result<SuiteReport> {
    grid.validate()?;
    let xs = grid.x_nodes();
    let mut r = SuiteReport::new("fields");

    let (mut imag, mut branch, mut skipped) = (0.0f64, 0.0f64, 0usize);
    for &t in &grid.times {
        for &x in &xs {
            let z = Complex64::new(x, 0.0);
            let (p, m) = match (
                field_value(z, t, SigmaBranch::Plus, s, n0, tol::TAU_SINGULAR),
                field_value(z, t, SigmaBranch::Minus, s, n0, tol::TAU_SINGULAR),
            ) {
                (Ok(p), Ok(m)) => (p, m),
                (Err(Error::FieldSingularity { .. }), _) | (_, Err(Error::FieldSingularity { .. })) => {
                    skipped += 1;
                    continue;
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            for f in [p, m] {
                imag = imag.max(f.u.im.abs() / f.u.re.abs().max(1.0));
                imag = imag.max(f.eta.im.abs() / f.eta.re.abs().max(1.0));
            }
            branch = branch.max((p.u.re - m.u.re).abs() / p.u.re.abs().max(1.0));
            branch = branch.max((p.eta.re - m.eta.re).abs() / p.eta.re.abs().max(1.0));
        }
    }
    let nodes = xs.len() * grid.times.len();
    let note = format!("{} of {nodes} nodes, {skipped} singular", nodes - skipped);
    r.checks.push(Check::below("imaginary_residue", imag, tol::REALITY_RELATIVE, note.clone()));
    r.checks.push(Check::below("sigma_independence", branch, tol::REALITY_RELATIVE, note));

    let h = opts.route_step;
    let (mut charge_err, mut log_err, mut literal_err, mut used) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    for &t in &grid.times {
        for &x in xs.iter().step_by(opts.route_stride.max(1)) {
            let Ok((u, eta)) = real_fields(x, t, s, n0, tol::TAU_SINGULAR) else {
                continue;
            };
            let omega = |y: f64| omega_plus(y, t, SigmaBranch::Plus, s, n0);
            let log_d = |y: f64| ln_abs_d(y, t, s, n0);
            let (Ok(dw), Ok(d2)) = (richardson_d1(&omega, x, h), richardson_d2(&log_d, x, h)) else {
                continue;
            };
            used += 1;
            charge_err = charge_err.max((-2.0 * dw - u).abs() / u.abs().max(1.0));
            log_err = log_err.max((-d2 - eta).abs() / eta.abs().max(1.0));
            if let Ok(lit) = log_n_elevation(x, t, SigmaBranch::Plus, s, n0) {
                literal_err = literal_err.max((lit - eta).abs() / eta.abs().max(1.0));
            }
        }
    }
    let note = format!("{used} nodes, h = {h:e}, Richardson");
    r.checks.push(Check::below("charge_route", charge_err, tol::ROUTE_CONSISTENCY, note.clone()));
    r.checks.push(Check::below("log_route", log_err, tol::ROUTE_CONSISTENCY, note.clone()));
    r.checks.push(
        Check::below(
            "literal_log_n_route",
            literal_err,
            tol::ROUTE_CONSISTENCY,
            "-2 (ln |N|^2)_xx, which is not a KB solution",
        )
        .advisory(),
    );

    let (mut sym_u, mut sym_eta, mut sym_skipped) = (0.0f64, 0.0f64, 0usize);
    for &x in xs.iter().filter(|x| **x >= 0.0) {
        match (real_fields(x, 0.0, s, n0, tol::TAU_SINGULAR), real_fields(-x, 0.0, s, n0, tol::TAU_SINGULAR))
        {
            (Ok(a), Ok(b)) => {
                sym_u = sym_u.max((a.0 + b.0).abs());
                sym_eta = sym_eta.max((a.1 - b.1).abs());
            }
            _ => sym_skipped += 1,
        }
    }
    let note = format!("{sym_skipped} singular pairs skipped");
    let mut su = Check::below("zero_time_u_odd", sym_u, tol::SYMMETRY, note.clone());
    let mut se = Check::below("zero_time_eta_even", sym_eta, tol::SYMMETRY, note);
    if !opts.normalized {
        su = su.advisory();
        se = se.advisory();
    }
    r.checks.push(su);
    r.checks.push(se);

    let mut charges = Vec::new();
    for &t in &grid.times {
        match far_left_charge(t, SigmaBranch::Plus, s, n0) {
            Ok(a) => charges.push((t, a)),
            Err(Error::BranchTracking { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let drift = charges.iter().map(|(_, a)| (a - charges[0].1).abs()).fold(0.0, f64::max);
    let listing: Vec<String> = charges.iter().map(|(t, a)| format!("t={t}: {a:.12}")).collect();
    if charges.is_empty() {
        r.checks.push(Check::flag("charge_conservation", false, "no time without a real field zero"));
    } else {
        r.checks.push(Check::below(
            "charge_conservation",
            drift,
            tol::CHARGE_CONSERVATION,
            listing.join(", "),
        ));
    }
    Ok(r)
}

/// KB residual convergence on the grid, from `4h` down to `h`.
///
/// The factor checks decide the suite; the size of the finest second-order
/// residual and the fourth-order study are reported alongside.
pub fn pde_suite(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    h: f64,
) -> Result<(SuiteReport, ConvergenceStudy, ConvergenceStudy)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Config(format!("finite-difference step {h}")));
    }
    let second = convergence_study(s, n0, grid, 4.0 * h, 3, StencilOrder::Second)?;
    let fourth = convergence_study(s, n0, grid, 4.0 * h, 3, StencilOrder::Fourth)?;
    let (lo, hi) = tol::CONVERGENCE_FACTOR;
    let fmt = |v: &[f64]| v.iter().map(|f| format!("{f:.4}")).collect::<Vec<_>>().join(", ");
    let mut r = SuiteReport::new("pde");
    for (name, factors) in [("r1_convergence", &second.r1_factors), ("r2_convergence", &second.r2_factors)] {
        let ok = factors.iter().all(|f| *f >= lo && *f <= hi);
        r.checks.push(Check::flag(name, ok, format!("factors [{}] against [{lo}, {hi}]", fmt(factors))));
    }
    let fin = second.finest();
    let excl = format!("{} of {} nodes excluded", fin.excluded_nodes, fin.total_nodes);
    r.checks.push(
        Check::below("r1_max_finest", fin.r1_max, tol::PDE_RESIDUAL_MAX, format!("h = {:e}, {excl}", fin.h))
            .advisory(),
    );
    r.checks.push(
        Check::below("r2_max_finest", fin.r2_max, tol::PDE_RESIDUAL_MAX, format!("h = {:e}, {excl}", fin.h))
            .advisory(),
    );
    let f4 = fourth.finest();
    r.checks.push(
        Check::below(
            "r1_max_fourth_order",
            f4.r1_max,
            tol::PDE_RESIDUAL_MAX,
            format!("factors [{}]", fmt(&fourth.r1_factors)),
        )
        .advisory(),
    );
    r.checks.push(
        Check::below(
            "r2_max_fourth_order",
            f4.r2_max,
            tol::PDE_RESIDUAL_MAX,
            format!("factors [{}]", fmt(&fourth.r2_factors)),
        )
        .advisory(),
    );
    Ok((r, second, fourth))
}

/// Integration settings for [`scatter_suite`].
#[derive(Debug, Clone, Copy)]
pub struct ScatterChecks {
    pub half_width: f64,
    pub steps: usize,
    /// Base indentation when the real axis cannot be used; tried with
    /// both signs and rescaled.
    pub height: f64,
    pub real_lambdas: [f64; 5],
}

impl Default for ScatterChecks {
    fn default() -> Self {
        ScatterChecks { half_width: 40.0, steps: 8000, height: 0.3, real_lambdas: [0.1, 0.4, 0.8, 1.5, 3.0] }
    }
}

/// Samples the soliton at `t` on the first contour that avoids its poles.
///
/// The real axis is tried first; when it meets a field singularity, or an
/// off-axis pole spoils the step-halving estimate at the first guess, the
/// path is indented above or below the axis instead.
fn sample_soliton(
    s: &SpectralPoint,
    n0: &NormingConstant,
    t: f64,
    c: &ScatterChecks,
) -> Result<(SampledPotential, Contour)> {
    let pot = SolitonPotential { spectrum: *s, norming: *n0, t };
    let h = c.height;
    let contours = [
        Contour::RealAxis,
        Contour::Indented { height: h },
        Contour::Indented { height: -h },
        Contour::Indented { height: h / 3.0 },
        Contour::Indented { height: -h / 3.0 },
        Contour::Indented { height: 2.0 * h },
        Contour::Indented { height: -2.0 * h },
    ];
    let mut tried = Vec::new();
    for contour in contours {
        let cfg = ScatterConfig {
            half_width: c.half_width,
            steps: c.steps,
            contour,
            tolerance: tol::INTEGRATOR_ERROR,
        };
        let sp = match SampledPotential::new(&pot, &cfg) {
            Ok(sp) => sp,
            Err(e @ (Error::FieldSingularity { .. } | Error::NotReal { .. })) => {
                tried.push(format!("{contour:?}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        match sp.scatter(s.lambda() * 1.1, SigmaBranch::Plus, tol::INTEGRATOR_ERROR) {
            Ok(_) => return Ok((sp, contour)),
            Err(e @ Error::StepCountTooSmall { .. }) => tried.push(format!("{contour:?}: {e}")),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Config(format!("no usable contour at t = {t}: {}", tried.join("; "))))
}

/// The located zeros at `t`, one per prescribed eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocatedZeros {
    pub t: f64,
    pub sigma: SigmaBranch,
    pub contour: Contour,
    pub zeros: Vec<Complex64>,
    pub failures: Vec<String>,
}

/// Zeros of `a` at t = 0 against `lambda_1` and `-conj(lambda_1)`, `|b/a|`
/// at real `lambda`, and the drift of the zeros over the grid times.
pub fn scatter_suite(
    s: &SpectralPoint,
    n0: &NormingConstant,
    times: &[f64],
    c: &ScatterChecks,
) -> Result<(SuiteReport, Vec<LocatedZeros>)> {
    let targets = [s.lambda(), s.partner()];
    let guesses = [s.lambda() * 1.1, s.partner() * 1.1];
    let mut located = Vec::new();
    let mut r = SuiteReport::new("scatter");

    let (base, base_contour) = sample_soliton(s, n0, 0.0, c)?;
    let (mut loc_err, mut refl, mut refl_bad) = (0.0f64, 0.0f64, Vec::new());
    for sigma in SigmaBranch::BOTH {
        let est = spectrum_from_samples(&base, sigma, &guesses);
        for target in targets {
            let d = est.zeros.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min);
            loc_err = loc_err.max(d);
        }
        located.push(LocatedZeros {
            t: 0.0,
            sigma,
            contour: base_contour,
            zeros: est.zeros,
            failures: est.failures.iter().map(|(g, why)| format!("{g}: {why}")).collect(),
        });
        for &lam in &c.real_lambdas {
            match base.scatter(Complex64::new(lam, 0.0), sigma, tol::INTEGRATOR_ERROR) {
                Ok(res) => {
                    let b = res.b.unwrap_or_default();
                    refl = refl.max((b / res.a).norm());
                }
                Err(e) => refl_bad.push(format!("lambda {lam}: {e}")),
            }
        }
    }
    r.checks.push(Check::below(
        "zero_location",
        loc_err,
        tol::SPECTRUM_LOCATION,
        format!("L = {}, {} steps, t = 0", c.half_width, c.steps),
    ));
    let note = if refl_bad.is_empty() {
        format!("lambda in {:?}, both branches", c.real_lambdas)
    } else {
        refl_bad.join("; ")
    };
    let mut rc = Check::below("reflection", refl, tol::REFLECTIONLESS, note);
    rc.passed &= refl_bad.is_empty();
    r.checks.push(rc);

    let reference = located[0].zeros.clone();
    let mut drift = if reference.len() == targets.len() { 0.0f64 } else { f64::INFINITY };
    for &t in times {
        let (sp, contour) = sample_soliton(s, n0, t, c)?;
        let est = spectrum_from_samples(&sp, SigmaBranch::Plus, &guesses);
        for z in &reference {
            let d = est.zeros.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            drift = drift.max(d);
        }
        located.push(LocatedZeros {
            t,
            sigma: SigmaBranch::Plus,
            contour,
            zeros: est.zeros,
            failures: est.failures.iter().map(|(g, why)| format!("{g}: {why}")).collect(),
        });
    }
    r.checks.push(Check::below(
        "isospectral_drift",
        drift,
        tol::ISOSPECTRAL_DRIFT,
        format!("times {times:?} against t = 0"),
    ));
    Ok((r, located))
}
