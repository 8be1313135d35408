// The closed-form Riemann–Hilbert solution against its defining linear
// system, on 1000 random points of the steep-soliton space-time box.

use kb_soliton::fields::GridSpec;
use kb_soliton::spectrum::{make_spectrum, normalize_phases};
use kb_soliton::verify::{algebra_suite, AlgebraSampling, SuiteReport};

pub fn run_example() -> kb_soliton::Result<SuiteReport> {
    let s = make_spectrum(0.25, 0.5)?;
    let n0 = normalize_phases(&s);
    let grid = GridSpec { x_min: -20.0, x_max: 20.0, x_step: 0.05, times: vec![-15.0, 1.0, 11.0] };
    algebra_suite(&s, &n0, &grid, &AlgebraSampling::default())
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let r = run_example()?;
    for c in &r.checks {
        println!("{:<26} {:.3e} (threshold {:e}) {}", c.name, c.value, c.threshold, c.detail);
    }
    Ok(())
}
