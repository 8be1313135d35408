// Integrates the spectral problem through the constructed potential and
// recovers its discrete spectrum: zeros of a(lambda) at lambda_1 and
// -conj(lambda_1), no reflection, and no drift of the zeros in time.

use kb_soliton::spectrum::{make_spectrum, normalize_phases};
use kb_soliton::verify::{scatter_suite, LocatedZeros, ScatterChecks, SuiteReport};

pub fn run_example() -> kb_soliton::Result<(SuiteReport, Vec<LocatedZeros>)> {
    let s = make_spectrum(0.25, 0.5)?;
    let n0 = normalize_phases(&s);
    scatter_suite(&s, &n0, &[-15.0, 1.0, 11.0], &ScatterChecks::default())
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let (r, zeros) = run_example()?;
    for z in &zeros {
        println!("t = {:>5}, sigma {:?}, {:?}: {:.9?}", z.t, z.sigma, z.contour, z.zeros);
    }
    for c in &r.checks {
        println!("{:<18} {:.3e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    Ok(())
}
