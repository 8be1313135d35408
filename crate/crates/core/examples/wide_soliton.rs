// The slow, wide soliton lambda_1 = 0.5 + 0.05i at t = 5. With mu much
// larger than nu the profile is a long oscillating train.

use kb_soliton::fields::{evaluate_grid, GridSpec};
use kb_soliton::spectrum::{make_spectrum, normalize_phases};
use kb_soliton::tolerances::TAU_SINGULAR;

#[derive(Debug)]
pub struct Profile {
    pub nodes: usize,
    pub singular: usize,
    pub max_abs_u: f64,
    pub max_abs_eta: f64,
    /// Sign changes of u across the slice.
    pub u_sign_changes: usize,
}

pub fn run_example() -> kb_soliton::Result<Profile> {
    let s = make_spectrum(0.5, 0.05)?;
    let n0 = normalize_phases(&s);
    let grid = GridSpec { x_min: -40.0, x_max: 40.0, x_step: 0.05, times: vec![5.0] };
    let samples = evaluate_grid(&grid, &s, &n0, TAU_SINGULAR)?;
    let regular: Vec<_> = samples.iter().filter(|p| !p.singular).collect();
    Ok(Profile {
        nodes: samples.len(),
        singular: samples.len() - regular.len(),
        max_abs_u: regular.iter().map(|p| p.u.abs()).fold(0.0, f64::max),
        max_abs_eta: regular.iter().map(|p| p.eta.abs()).fold(0.0, f64::max),
        u_sign_changes: regular.windows(2).filter(|w| w[0].u * w[1].u < 0.0).count(),
    })
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let p = run_example()?;
    println!("{} nodes on [-40, 40], {} singular", p.nodes, p.singular);
    println!("max |u| = {:.4}, max |eta| = {:.4}", p.max_abs_u, p.max_abs_eta);
    println!("u changes sign {} times", p.u_sign_changes);
    Ok(())
}
