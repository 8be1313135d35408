//! The three subcommands. Each validates first, writes into a [`FileSet`]
//! and only keeps the files once everything, manifest included, is on disk.

use std::time::Instant;

use serde::Serialize;

use super::config::{Format, RunConfig, Suite};
use super::output::{
    singular_csv, slice_csv, slice_json, slice_name, to_json, FileSet, RunManifest, MANIFEST,
};
use crate::error::Result;
use crate::fields::{field_zeros, gamma_zeros, sample, SingularPoint};
use crate::verify::{
    algebra_suite, fields_suite, pde_suite, scatter_suite, AlgebraSampling, ConvergenceStudy, FieldChecks,
    LocatedZeros, ScatterChecks, SuiteReport,
};

pub const VERIFY_REPORT: &str = "verify_report.json";

fn finish(mut manifest: RunManifest, mut files: FileSet, started: Instant) -> Result<RunManifest> {
    manifest.files = files.names();
    manifest.files.push(MANIFEST.to_string());
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    files.write(MANIFEST, manifest.render()?.as_bytes())?;
    files.keep();
    Ok(manifest)
}

/// One data file per time slice plus the manifest.
pub fn cmd_eval(cfg: &RunConfig) -> Result<RunManifest> {
    let started = Instant::now();
    cfg.validate()?;
    let s = cfg.spectrum()?;
    let n0 = cfg.norming()?;
    let xs = cfg.grid.x_nodes();
    let mut files = FileSet::create(&cfg.output_path)?;
    let mut manifest = RunManifest::new("eval", cfg);
    for (k, &t) in cfg.grid.times.iter().enumerate() {
        let slice =
            xs.iter().map(|&x| sample(x, t, &s, &n0, cfg.tolerances.field)).collect::<Result<Vec<_>>>()?;
        manifest.singular_counts.push(slice.iter().filter(|p| p.singular).count());
        let body = match cfg.format {
            Format::Csv => slice_csv(&slice),
            Format::Json => slice_json(&slice)?,
        };
        files.write(&slice_name(k, t, cfg.format), body.as_bytes())?;
    }
    finish(manifest, files, started)
}

/// Zeros of `Gamma` and real zeros of `D` on every slice of the grid.
pub fn singular_set(cfg: &RunConfig) -> Result<Vec<Vec<SingularPoint>>> {
    cfg.validate()?;
    let s = cfg.spectrum()?;
    let n0 = cfg.norming()?;
    let xs = cfg.grid.x_nodes();
    cfg.grid
        .times
        .iter()
        .map(|&t| {
            let mut pts = gamma_zeros(&xs, t, &s, &n0, cfg.tolerances.bisection, cfg.tolerances.gamma)?;
            pts.extend(field_zeros(&xs, t, &s, &n0, cfg.tolerances.bisection, cfg.tolerances.field)?);
            Ok(pts)
        })
        .collect()
}

/// The singular list per time, as `singularities.csv` or `.json`.
pub fn cmd_singularities(cfg: &RunConfig) -> Result<RunManifest> {
    let started = Instant::now();
    let sets = singular_set(cfg)?;
    let mut files = FileSet::create(&cfg.output_path)?;
    let mut manifest = RunManifest::new("singularities", cfg);
    manifest.singular_counts = sets.iter().map(|p| p.len()).collect();
    let all: Vec<SingularPoint> = sets.into_iter().flatten().collect();
    let body = match cfg.format {
        Format::Csv => singular_csv(&all),
        Format::Json => to_json(&all)?,
    };
    files.write(&format!("singularities.{}", cfg.format.extension()), body.as_bytes())?;
    finish(manifest, files, started)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub pde_second_order: Option<ConvergenceStudy>,
    pub pde_fourth_order: Option<ConvergenceStudy>,
    pub scatter_zeros: Vec<LocatedZeros>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed())
    }

    /// One line per check, e.g.
    /// `PASS algebra.determinant_identity 1.651e-12 (threshold 1e-10) 1000 samples, ...`.
    /// Failed diagnostics are tagged `info`.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.checks {
                let tag = match (c.passed, c.enforced) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL",
                    (false, false) => "info",
                };
                out.push_str(&format!(
                    "{tag} {}.{} {:.3e} (threshold {:e}) {}\n",
                    s.suite, c.name, c.value, c.threshold, c.detail
                ));
            }
        }
        out
    }
}

/// Runs the selected suites without touching the file system.
pub fn run_suites(cfg: &RunConfig, suite: Suite) -> Result<VerifyReport> {
    cfg.validate()?;
    let s = cfg.spectrum()?;
    let n0 = cfg.norming()?;
    let wants = |x: Suite| suite == Suite::All || suite == x;
    let mut report = VerifyReport {
        suites: Vec::new(),
        pde_second_order: None,
        pde_fourth_order: None,
        scatter_zeros: Vec::new(),
    };
    if wants(Suite::Algebra) {
        let sampling = AlgebraSampling {
            samples: cfg.verify.samples,
            seed: cfg.verify.seed,
            gamma_tol: cfg.tolerances.gamma,
            ..AlgebraSampling::default()
        };
        report.suites.push(algebra_suite(&s, &n0, &cfg.grid, &sampling)?);
    }
    if wants(Suite::Fields) {
        let opts = FieldChecks { normalized: cfg.is_normalized(), ..FieldChecks::default() };
        report.suites.push(fields_suite(&s, &n0, &cfg.grid, &opts)?);
    }
    if wants(Suite::Pde) {
        let (r, second, fourth) = pde_suite(&s, &n0, &cfg.grid, cfg.verify.h)?;
        report.suites.push(r);
        report.pde_second_order = Some(second);
        report.pde_fourth_order = Some(fourth);
    }
    if wants(Suite::Scatter) {
        let checks = ScatterChecks {
            half_width: cfg.verify.half_width,
            steps: cfg.verify.steps,
            ..ScatterChecks::default()
        };
        let (r, zeros) = scatter_suite(&s, &n0, &cfg.grid.times, &checks)?;
        report.suites.push(r);
        report.scatter_zeros = zeros;
    }
    Ok(report)
}

/// Runs the suites and writes `verify_report.json` plus the manifest.
pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<(RunManifest, VerifyReport)> {
    let started = Instant::now();
    let report = run_suites(cfg, suite)?;
    let mut files = FileSet::create(&cfg.output_path)?;
    let mut echo = cfg.clone();
    echo.verify.suite = suite;
    let mut manifest = RunManifest::new("verify", &echo);
    for r in &report.suites {
        manifest.suites.insert(r.suite.clone(), r.passed());
    }
    files.write(VERIFY_REPORT, to_json(&report)?.as_bytes())?;
    Ok((finish(manifest, files, started)?, report))
}
