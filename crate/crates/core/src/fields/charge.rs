//! The charge `omega_+ = (1/2) int_x^inf u ds`.
//!
//! Since `u = -2 sigma Im (ln D)_x`, the charge is `sigma arg D` on the branch
//! that vanishes at `+inf`. `arg N` differs from it by jumps of `pi` at the
//! zeros of `Gamma`, which is why the walk tracks `D = Gamma N` instead.

use num_complex::Complex64;

use super::tau::tau;
use crate::error::{Error, Result};
use crate::spectrum::{NormingConstant, SigmaBranch, SpectralPoint};
use crate::tolerances::{FAR_FIELD_DECAY, TAU_SINGULAR, UNWRAP_MAX_STEP};

/// `(x_left, x_right)` beyond which every subdominant term of `D` is below
/// `FAR_FIELD_DECAY` relative to the dominant one.
pub fn far_field_bounds(t: f64, s: &SpectralPoint, n0: &NormingConstant) -> (f64, f64) {
    let decades = -FAR_FIELD_DECAY.ln();
    let offset = (n0.x0 - s.ln_scale()).abs();
    let half = 2.0 * (s.mu * t).abs() + (decades + offset) / (2.0 * s.nu);
    (-n0.x_shift - half, -n0.x_shift + half)
}

fn step_bound(s: &SpectralPoint) -> f64 {
    // the fastest phase of D turns at rate 4|mu|; stay well inside pi/2 per step
    (0.1f64).min(0.25 / s.mu.abs().max(s.nu))
}

/// `omega_+(x, t)` by unwrapping `arg D` from the right far field down to `x`.
///
/// Fails with [`Error::BranchTracking`] when the walk meets a zero of `D`,
/// i.e. a real singularity of the fields between `x` and `+inf`.
pub fn omega_plus(
    x: f64,
    t: f64,
    sigma: SigmaBranch,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<f64> {
    if !x.is_finite() || !t.is_finite() {
        return Err(Error::NonFinite { what: "charge position" });
    }
    let d_at = |x: f64| tau(Complex64::new(x, 0.0), t, sigma, s, n0).scaled;
    let (_, right) = far_field_bounds(t, s, n0);
    let start = right.max(x);
    let mut cur = start;
    let mut d_cur = d_at(cur);
    let mut total = d_cur.arg();
    let h0 = step_bound(s);
    // march on a fixed lattice anchored at `start` so nearby targets share nodes
    let mut h = h0;
    while cur > x {
        let next = if cur - h < x { x } else { cur - h };
        let d_next = d_at(next);
        let jump = (d_next / d_cur).arg();
        if d_next.norm() < TAU_SINGULAR || !(jump.abs() < UNWRAP_MAX_STEP) {
            h *= 0.5;
            if h < 1e-9 {
                return Err(Error::BranchTracking { x: next, step: h });
            }
            continue;
        }
        total += jump;
        cur = next;
        d_cur = d_next;
        h = h0;
    }
    Ok(sigma.value() * total)
}

/// `alpha_1 = omega_+(-inf, t)`, read at the left far-field cutoff.
pub fn far_left_charge(t: f64, sigma: SigmaBranch, s: &SpectralPoint, n0: &NormingConstant) -> Result<f64> {
    let (left, _) = far_field_bounds(t, s, n0);
    omega_plus(left, t, sigma, s, n0)
}
