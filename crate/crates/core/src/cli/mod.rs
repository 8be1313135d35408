//! Command-line front end behind the `kbsoliton` binary.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 for
//! configuration, usage and I/O errors.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_eval, cmd_singularities, cmd_verify, run_suites, singular_set, VerifyReport};
pub use config::{ConfigFile, Format, RunConfig, Suite};
pub use output::RunManifest;

use config::{GridSection, OutputSection, SpectrumSection, ToleranceSection, VerifySection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "kbsoliton",
    version,
    about = "Two-pole Kaup-Boussinesq soliton: evaluation and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write u, eta and Gamma on every time slice of the grid
    Eval(Flags),
    /// Run verification suites and write a JSON report
    Verify(Flags),
    /// Locate zeros of Gamma and real zeros of Gamma N per time slice
    Singularities(Flags),
}

/// Every config key as a flag. Flags override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML config file (a previous manifest also works)
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long = "x-min", allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long = "x-max", allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long = "x-step")]
    pub x_step: Option<f64>,
    /// Comma-separated, e.g. `--times=-15,1,11`
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub times: Option<Vec<f64>>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Finest finite-difference step of the residual study
    #[arg(long)]
    pub h: Option<f64>,
    /// Half-width of the scattering domain
    #[arg(long = "L")]
    pub half_width: Option<f64>,
    /// RK4 steps across the scattering domain
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long = "tol-gamma")]
    pub tol_gamma: Option<f64>,
    #[arg(long = "tol-field")]
    pub tol_field: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Flags {
    fn as_file(&self) -> ConfigFile {
        ConfigFile {
            spectrum: SpectrumSection { mu: self.mu, nu: self.nu, x0: self.x0, t0: self.t0 },
            grid: GridSection {
                x_min: self.x_min,
                x_max: self.x_max,
                x_step: self.x_step,
                times: self.times.clone(),
            },
            tolerances: ToleranceSection { gamma: self.tol_gamma, field: self.tol_field, bisection: None },
            output: OutputSection { path: self.out.clone(), format: self.format },
            verify: VerifySection {
                suite: self.suite,
                h: self.h,
                half_width: self.half_width,
                steps: self.steps,
                samples: self.samples,
                seed: self.seed,
            },
            run: None,
        }
    }

    /// Defaults, then the config file, then the flags.
    pub fn resolve(&self) -> crate::Result<RunConfig> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        RunConfig::resolve(&base.merge(self.as_file()))
    }
}

fn execute(cmd: &Command) -> crate::Result<i32> {
    match cmd {
        Command::Eval(flags) => {
            let m = cmd_eval(&flags.resolve()?)?;
            println!(
                "wrote {} files to {}; singular nodes per slice {:?}",
                m.files.len(),
                m.config.output_path.display(),
                m.singular_counts
            );
            Ok(EXIT_OK)
        }
        Command::Singularities(flags) => {
            let m = cmd_singularities(&flags.resolve()?)?;
            println!(
                "singular points per slice {:?} in {}",
                m.singular_counts,
                m.config.output_path.display()
            );
            Ok(EXIT_OK)
        }
        Command::Verify(flags) => {
            let cfg = flags.resolve()?;
            let (m, report) = cmd_verify(&cfg, cfg.verify.suite)?;
            print!("{}", report.summary());
            Ok(if m.passed() { EXIT_OK } else { EXIT_ASSERTION })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
