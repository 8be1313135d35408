//! KB residuals from central differences of the analytic fields.
//!
//! ```text
//! r1 = u_t + eta_x + u u_x
//! r2 = eta_t - u_xxx / 4 + (u eta)_x
//! ```
//!
//! The default stencils are second order, so halving `h` cuts both
//! residuals by about four until rounding takes over (`u_xxx` amplifies it
//! by `h^-3`). Fourth-order stencils are available to separate truncation
//! from the fields themselves.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{real_fields, tau, GridSpec};
use crate::spectrum::{NormingConstant, SigmaBranch, SpectralPoint};
use crate::tolerances::{RESIDUAL_EXCLUSION, TAU_SINGULAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StencilOrder {
    /// 3-point first derivatives, 5-point `u_xxx`.
    Second,
    /// 5-point first derivatives, 7-point `u_xxx`.
    Fourth,
}

impl StencilOrder {
    /// Expected residual reduction per halving of `h`.
    pub fn halving_factor(self) -> f64 {
        match self {
            StencilOrder::Second => 4.0,
            StencilOrder::Fourth => 16.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub h: f64,
    pub order: StencilOrder,
    pub r1_max: f64,
    /// Root mean square over the retained nodes.
    pub r1_l2: f64,
    pub r2_max: f64,
    pub r2_l2: f64,
    pub excluded_nodes: usize,
    pub total_nodes: usize,
}

/// Marks nodes whose `radius`-neighbourhood in x and t comes close to a zero
/// of `D`. Returned in the same row-major order as the grid samples.
pub fn exclusion_mask(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    radius: f64,
) -> Result<Vec<bool>> {
    grid.validate()?;
    let xs = grid.x_nodes();
    let mut mask = Vec::with_capacity(xs.len() * grid.times.len());
    for &t in &grid.times {
        for &x in &xs {
            let near = (-1..=1).any(|j| {
                (-4..=4).any(|k| {
                    let z = Complex64::new(x + radius * k as f64 / 4.0, 0.0);
                    let tt = t + radius * j as f64;
                    tau(z, tt, SigmaBranch::Plus, s, n0).is_singular(RESIDUAL_EXCLUSION)
                })
            });
            mask.push(near);
        }
    }
    Ok(mask)
}

/// `(r1, r2)` at one node.
pub fn residual_at(
    x: f64,
    t: f64,
    h: f64,
    order: StencilOrder,
    s: &SpectralPoint,
    n0: &NormingConstant,
) -> Result<(f64, f64)> {
    let f = |x: f64, t: f64| real_fields(x, t, s, n0, TAU_SINGULAR);
    let (u, eta) = f(x, t)?;
    let reach = match order {
        StencilOrder::Second => 2,
        StencilOrder::Fourth => 3,
    };
    // x-offsets -reach..=reach, then t-offsets
    let mut ux = [0.0; 7];
    let mut ex = [0.0; 7];
    for k in -reach..=reach {
        let (a, b) = if k == 0 { (u, eta) } else { f(x + k as f64 * h, t)? };
        ux[(k + 3) as usize] = a;
        ex[(k + 3) as usize] = b;
    }
    let tr = reach.min(2);
    let mut ut = [0.0; 5];
    let mut et = [0.0; 5];
    for k in -tr..=tr {
        let (a, b) = if k == 0 { (u, eta) } else { f(x, t + k as f64 * h)? };
        ut[(k + 2) as usize] = a;
        et[(k + 2) as usize] = b;
    }
    type Wide = fn(&[f64; 7], f64) -> f64;
    type Narrow = fn(&[f64; 5], f64) -> f64;
    let (d1x, d1t, d3): (Wide, Narrow, Wide) = match order {
        StencilOrder::Second => (
            |v, h| (v[4] - v[2]) / (2.0 * h),
            |v, h| (v[3] - v[1]) / (2.0 * h),
            |v, h| (v[5] - 2.0 * v[4] + 2.0 * v[2] - v[1]) / (2.0 * h * h * h),
        ),
        StencilOrder::Fourth => (
            |v, h| (-v[5] + 8.0 * v[4] - 8.0 * v[2] + v[1]) / (12.0 * h),
            |v, h| (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h),
            |v, h| (-v[6] + 8.0 * v[5] - 13.0 * v[4] + 13.0 * v[2] - 8.0 * v[1] + v[0]) / (8.0 * h * h * h),
        ),
    };
    let u_x = d1x(&ux, h);
    let eta_x = d1x(&ex, h);
    let u_t = d1t(&ut, h);
    let eta_t = d1t(&et, h);
    let u_xxx = d3(&ux, h);
    let r1 = u_t + eta_x + u * u_x;
    let r2 = eta_t - 0.25 * u_xxx + u_x * eta + u * eta_x;
    Ok((r1, r2))
}

/// Residual norms over the grid nodes not excluded by `mask`.
pub fn pde_residual_masked(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    h: f64,
    order: StencilOrder,
    mask: &[bool],
) -> Result<ResidualReport> {
    grid.validate()?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidGrid(format!("finite-difference step {h}")));
    }
    let xs = grid.x_nodes();
    let total = xs.len() * grid.times.len();
    if mask.len() != total {
        return Err(Error::InvalidGrid("mask does not match grid".into()));
    }
    let excluded = mask.iter().filter(|&&m| m).count();
    if 2 * excluded > total {
        return Err(Error::GridUnusable { excluded, total });
    }
    let nodes = grid.times.iter().flat_map(|&t| xs.iter().map(move |&x| (x, t)));
    let (mut m1, mut m2, mut s1, mut s2) = (0.0f64, 0.0f64, 0.0, 0.0);
    for ((x, t), &skip) in nodes.zip(mask) {
        if skip {
            continue;
        }
        let (r1, r2) = residual_at(x, t, h, order, s, n0)?;
        m1 = m1.max(r1.abs());
        m2 = m2.max(r2.abs());
        s1 += r1 * r1;
        s2 += r2 * r2;
    }
    let kept = (total - excluded) as f64;
    Ok(ResidualReport {
        h,
        order,
        r1_max: m1,
        r1_l2: (s1 / kept).sqrt(),
        r2_max: m2,
        r2_l2: (s2 / kept).sqrt(),
        excluded_nodes: excluded,
        total_nodes: total,
    })
}

/// Second-order residual norms with stencils near singular points
/// excluded (radius `5h`).
pub fn pde_residual(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    h: f64,
) -> Result<ResidualReport> {
    let mask = exclusion_mask(s, n0, grid, 5.0 * h)?;
    pde_residual_masked(s, n0, grid, h, StencilOrder::Second, &mask)
}

/// Reports at successively halved steps sharing one exclusion mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub reports: Vec<ResidualReport>,
    /// `r1_max(h) / r1_max(h/2)` for consecutive reports.
    pub r1_factors: Vec<f64>,
    pub r2_factors: Vec<f64>,
}

impl ConvergenceStudy {
    /// Every factor lies in `range` (second order: `[3.5, 4.5]`).
    pub fn within(&self, range: (f64, f64)) -> bool {
        self.r1_factors.iter().chain(&self.r2_factors).all(|f| *f >= range.0 && *f <= range.1)
    }

    pub fn finest(&self) -> &ResidualReport {
        self.reports.last().expect("at least one step")
    }
}

/// Runs `levels` reports starting at `h_coarse` and halving each time.
pub fn convergence_study(
    s: &SpectralPoint,
    n0: &NormingConstant,
    grid: &GridSpec,
    h_coarse: f64,
    levels: usize,
    order: StencilOrder,
) -> Result<ConvergenceStudy> {
    if levels < 2 {
        return Err(Error::InvalidGrid("a convergence study needs two steps".into()));
    }
    let mask = exclusion_mask(s, n0, grid, 5.0 * h_coarse)?;
    let reports = (0..levels)
        .map(|k| {
            let h = h_coarse / f64::powi(2.0, k as i32);
            pde_residual_masked(s, n0, grid, h, order, &mask)
        })
        .collect::<Result<Vec<_>>>()?;
    let ratios =
        |f: fn(&ResidualReport) -> f64| reports.windows(2).map(|w| f(&w[0]) / f(&w[1])).collect::<Vec<_>>();
    Ok(ConvergenceStudy { r1_factors: ratios(|r| r.r1_max), r2_factors: ratios(|r| r.r2_max), reports })
}
