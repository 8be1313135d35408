// Residuals of both KB equations under step halving, with second- and
// fourth-order central differences.

use kb_soliton::fields::GridSpec;
use kb_soliton::spectrum::{make_spectrum, normalize_phases};
use kb_soliton::verify::{convergence_study, ConvergenceStudy, StencilOrder};

pub fn run_example() -> kb_soliton::Result<(ConvergenceStudy, ConvergenceStudy)> {
    let s = make_spectrum(0.25, 0.5)?;
    let n0 = normalize_phases(&s);
    let grid = GridSpec { x_min: -20.0, x_max: 20.0, x_step: 0.05, times: vec![-15.0, 1.0, 11.0] };
    let second = convergence_study(&s, &n0, &grid, 4e-3, 3, StencilOrder::Second)?;
    let fourth = convergence_study(&s, &n0, &grid, 4e-3, 3, StencilOrder::Fourth)?;
    Ok((second, fourth))
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let (second, fourth) = run_example()?;
    for (label, study) in [("second order", &second), ("fourth order", &fourth)] {
        println!("{label}");
        for r in &study.reports {
            println!("  h = {:.0e}: max r1 = {:.3e}, max r2 = {:.3e}", r.h, r.r1_max, r.r2_max);
        }
        println!("  halving factors r1 {:.3?}, r2 {:.3?}", study.r1_factors, study.r2_factors);
    }
    Ok(())
}
