// The unwrapped charge omega_+ and its far-left value alpha_1, which stays
// fixed while the soliton moves.

use kb_soliton::fields::{far_left_charge, omega_plus, velocity};
use kb_soliton::spectrum::{make_spectrum, normalize_phases, SigmaBranch};

#[derive(Debug)]
pub struct ChargeReport {
    /// `(t, alpha_1)` per time.
    pub alpha: Vec<(f64, f64)>,
    /// Largest gap between -2 d(omega_+)/dx and u along the t = 1 slice.
    pub route_error: f64,
}

pub fn run_example() -> kb_soliton::Result<ChargeReport> {
    let s = make_spectrum(0.25, 0.5)?;
    let n0 = normalize_phases(&s);
    let alpha = [-15.0, 1.0, 11.0]
        .iter()
        .map(|&t| Ok((t, far_left_charge(t, SigmaBranch::Plus, &s, &n0)?)))
        .collect::<kb_soliton::Result<Vec<_>>>()?;
    let h = 1e-3;
    let mut route_error = 0.0f64;
    for k in -20..=20 {
        let x = k as f64;
        let w = |x: f64| omega_plus(x, 1.0, SigmaBranch::Plus, &s, &n0);
        let d1 = |h: f64| -> kb_soliton::Result<f64> { Ok((w(x + h)? - w(x - h)?) / (2.0 * h)) };
        let dw = (4.0 * d1(h)? - d1(2.0 * h)?) / 3.0;
        route_error = route_error.max((-2.0 * dw - velocity(x, 1.0, &s, &n0)?).abs());
    }
    Ok(ChargeReport { alpha, route_error })
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let r = run_example()?;
    for (t, a) in &r.alpha {
        println!("t = {t:>5}: alpha_1 = {a:+.3e}");
    }
    println!("max |-2 d(omega_+)/dx - u| at t = 1: {:.3e}", r.route_error);
    Ok(())
}
