//! Locating the singular set along a time slice.
//!
//! Two kinds of points are reported. Zeros of `Gamma` are poles of `N` and of
//! the discrete Jost vector. Real zeros of `D = Gamma N` are where `u` and
//! `eta` blow up.
//!
//! Simple zeros of `Gamma` show up as sign changes between nodes and are
//! bisected. Even-order zeros do not change sign: `Gamma` touches zero to
//! fourth order and `D` to sixth order at the centre of the t = 0 profile.
//! Near such a point the computed value is rounding noise, so its minimum
//! is poorly defined. Instead the zero is placed at the centre of the band
//! where the magnitude drops below a tolerance. The band edges are simple
//! crossings and bisect cleanly, and for a zero whose magnitude is locally
//! symmetric the centre is exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::tau::tau;
use crate::error::{Error, Result};
use crate::rh_algebra::gamma;
use crate::spectrum::{phases, NormingConstant, SigmaBranch, SpectralPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularKind {
    GammaZero,
    FieldZero,
}

impl SingularKind {
    pub fn label(self) -> &'static str {
        match self {
            SingularKind::GammaZero => "gamma_zero",
            SingularKind::FieldZero => "field_zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub t: f64,
    pub x: f64,
    pub kind: SingularKind,
    /// Width of the final bracket (of a band edge for even-order zeros).
    pub bracket: f64,
    /// Scaled `|Gamma|` or `|D|` at `x`.
    pub residual: f64,
}

fn check_nodes(xs: &[f64], width: f64, tol: f64) -> Result<()> {
    if !(width > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidGrid(format!("bracket width {width}, tolerance {tol}")));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("nodes must be strictly increasing".into()));
    }
    Ok(())
}

/// Bisects between `inside` (`|f| < tol`) and `outside` to the crossing.
fn band_edge(f: &dyn Fn(f64) -> f64, mut inside: f64, mut outside: f64, tol: f64, width: f64) -> f64 {
    while (outside - inside).abs() > width {
        let m = 0.5 * (inside + outside);
        if m == inside || m == outside {
            break;
        }
        if f(m).abs() < tol {
            inside = m;
        } else {
            outside = m;
        }
    }
    0.5 * (inside + outside)
}

/// Golden-section minimum of `|f|` on `[a, b]`.
fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut e = a + r * (b - a);
    let (mut fc, mut fe) = (f(c).abs(), f(e).abs());
    while b - a > width {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = b - r * (b - a);
            fc = f(c).abs();
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + r * (b - a);
            fe = f(e).abs();
        }
    }
    0.5 * (a + b)
}

/// `(x, bracket)` of every zero of `f` on the nodes. With `signed`, sign
/// changes between nodes above `tol` are bisected as simple zeros.
fn locate(f: &dyn Fn(f64) -> f64, xs: &[f64], signed: bool, tol: f64, width: f64) -> Vec<(f64, f64)> {
    let n = xs.len();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let small: Vec<bool> = vals.iter().map(|v| v.abs() < tol).collect();
    let mut out = Vec::new();
    let centre = |lo_in: f64, lo_out: Option<f64>, hi_in: f64, hi_out: Option<f64>| {
        let lo = lo_out.map_or(lo_in, |o| band_edge(f, lo_in, o, tol, width));
        let hi = hi_out.map_or(hi_in, |o| band_edge(f, hi_in, o, tol, width));
        (0.5 * (lo + hi), width)
    };

    // runs of nodes inside a band
    let mut k = 0;
    while k < n {
        if !small[k] {
            k += 1;
            continue;
        }
        let i = k;
        while k + 1 < n && small[k + 1] {
            k += 1;
        }
        let lo_out = (i > 0).then(|| xs[i - 1]);
        let hi_out = (k + 1 < n).then(|| xs[k + 1]);
        out.push(centre(xs[i], lo_out, xs[k], hi_out));
        k += 1;
    }

    for k in 0..n.saturating_sub(1) {
        if small[k] || small[k + 1] {
            continue;
        }
        if signed && vals[k].signum() != vals[k + 1].signum() {
            let (mut a, mut b, fa) = (xs[k], xs[k + 1], vals[k]);
            while b - a > width {
                let m = 0.5 * (a + b);
                if m == a || m == b {
                    break;
                }
                if f(m).signum() == fa.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push((0.5 * (a + b), b - a));
        }
    }

    // narrow bands that fall between nodes
    for k in 1..n.saturating_sub(1) {
        if small[k - 1] || small[k] || small[k + 1] {
            continue;
        }
        let m = vals[k].abs();
        if !(m <= vals[k - 1].abs() && m <= vals[k + 1].abs()) {
            continue;
        }
        if signed && (vals[k - 1].signum() != vals[k].signum() || vals[k].signum() != vals[k + 1].signum()) {
            continue;
        }
        let x = golden_min(f, xs[k - 1], xs[k + 1], width);
        if f(x).abs() < tol {
            let c = centre(x, Some(xs[k - 1]), x, Some(xs[k + 1]));
            if out.iter().all(|p: &(f64, f64)| (p.0 - c.0).abs() > 2.0 * width) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Zeros of `Gamma(., t)`: sign changes bisected to `width`, and even-order
/// zeros where the scaled `|Gamma|` drops below `tol`.
pub fn gamma_zeros(
    xs: &[f64],
    t: f64,
    s: &SpectralPoint,
    n0: &NormingConstant,
    width: f64,
    tol: f64,
) -> Result<Vec<SingularPoint>> {
    check_nodes(xs, width, tol)?;
    let g = |x: f64| gamma(&phases(x, t, SigmaBranch::Plus, s, n0), s).mantissa;
    Ok(locate(&g, xs, true, tol, width)
        .into_iter()
        .map(|(x, bracket)| SingularPoint {
            t,
            x,
            kind: SingularKind::GammaZero,
            bracket,
            residual: g(x).abs(),
        })
        .collect())
}

/// Real zeros of `D(., t)`, where the scaled `|D|` drops below `tol`.
pub fn field_zeros(
    xs: &[f64],
    t: f64,
    s: &SpectralPoint,
    n0: &NormingConstant,
    width: f64,
    tol: f64,
) -> Result<Vec<SingularPoint>> {
    check_nodes(xs, width, tol)?;
    let d = |x: f64| tau(Complex64::new(x, 0.0), t, SigmaBranch::Plus, s, n0).scaled.norm();
    Ok(locate(&d, xs, false, tol, width)
        .into_iter()
        .map(|(x, bracket)| SingularPoint { t, x, kind: SingularKind::FieldZero, bracket, residual: d(x) })
        .collect())
}
