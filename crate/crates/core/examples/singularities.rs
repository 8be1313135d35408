// Zeros of the determinant Gamma on each steep-soliton slice, and the t = 0 slice
// where the fields themselves blow up at the origin.

use kb_soliton::cli::{singular_set, RunConfig};
use kb_soliton::fields::SingularPoint;

pub fn run_example() -> kb_soliton::Result<(Vec<Vec<SingularPoint>>, Vec<SingularPoint>)> {
    let steep = RunConfig::default();
    let per_time = singular_set(&steep)?;
    let mut at_zero = steep.clone();
    at_zero.grid.times = vec![0.0];
    let origin = singular_set(&at_zero)?.remove(0);
    Ok((per_time, origin))
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let (per_time, origin) = run_example()?;
    for p in per_time.iter().flatten().chain(&origin) {
        println!("t = {:>5}  {:<10}  x = {:+.10}  (bracket {:.1e})", p.t, p.kind.label(), p.x, p.bracket);
    }
    Ok(())
}
