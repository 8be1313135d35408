// Velocity and elevation of the steep soliton (lambda_1 = 0.25 + 0.5i) on
// three time slices, written as plot-ready CSV.
//
//     cargo run --release --example snapshots -- /tmp/steep

use std::path::{Path, PathBuf};

use kb_soliton::cli::{cmd_eval, RunConfig};

/// Range of one slice; `singular` counts nodes too close to a field zero.
#[derive(Debug)]
pub struct SliceRange {
    pub t: f64,
    pub u: (f64, f64),
    pub eta: (f64, f64),
    pub singular: usize,
}

fn read_slice(path: &Path) -> kb_soliton::Result<SliceRange> {
    let text = std::fs::read_to_string(path)?;
    let mut r = SliceRange {
        t: f64::NAN,
        u: (f64::INFINITY, f64::NEG_INFINITY),
        eta: (f64::INFINITY, f64::NEG_INFINITY),
        singular: 0,
    };
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        r.t = cols[1].parse().unwrap();
        if cols[5] == "1" {
            r.singular += 1;
            continue;
        }
        let (u, eta): (f64, f64) = (cols[2].parse().unwrap(), cols[3].parse().unwrap());
        r.u = (r.u.0.min(u), r.u.1.max(u));
        r.eta = (r.eta.0.min(eta), r.eta.1.max(eta));
    }
    Ok(r)
}

pub fn run_example(out: &Path) -> kb_soliton::Result<Vec<SliceRange>> {
    let cfg = RunConfig { output_path: out.to_path_buf(), ..RunConfig::default() };
    let manifest = cmd_eval(&cfg)?;
    manifest.files.iter().filter(|f| f.starts_with("slice_")).map(|f| read_slice(&out.join(f))).collect()
}

#[allow(dead_code)]
fn main() -> kb_soliton::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("snapshots_out"));
    for r in run_example(&out)? {
        println!(
            "t = {:>5}: u in [{:+.4}, {:+.4}], eta in [{:+.4}, {:+.4}], {} singular nodes",
            r.t, r.u.0, r.u.1, r.eta.0, r.eta.1, r.singular
        );
    }
    println!("slices written to {}", out.display());
    Ok(())
}
