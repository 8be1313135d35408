//! Run configuration: built-in defaults, then a TOML file, then flags.
//!
//! ```toml
//! [spectrum]
//! mu = 0.25
//! nu = 0.5
//! # x0 = 3.0, t0 = 0.0   (omit for the normalized constants)
//!
//! [grid]
//! x_min = -20.0
//! x_max = 20.0
//! x_step = 0.05
//! times = [-15.0, 1.0, 11.0]
//!
//! [tolerances]
//! gamma = 1e-9
//! field = 1e-6
//! bisection = 1e-10
//!
//! [output]
//! path = "out"
//! format = "csv"
//!
//! [verify]
//! suite = "all"
//! h = 1e-3
//! L = 40.0
//! steps = 8000
//! samples = 1000
//! seed = 7
//! ```
//!
//! Unknown keys are rejected. A `[run]` table is ignored, so a manifest
//! written by a previous run can be passed back as `--config`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::GridSpec;
use crate::spectrum::{make_spectrum, normalize_phases, NormingConstant, SpectralPoint};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Fields,
    Pde,
    Scatter,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Fields => "fields",
            Suite::Pde => "pde",
            Suite::Scatter => "scatter",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub x0: Option<f64>,
    pub t0: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_step: Option<f64>,
    pub times: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    pub gamma: Option<f64>,
    pub field: Option<f64>,
    pub bisection: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub suite: Option<Suite>,
    pub h: Option<f64>,
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    pub steps: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

/// The file layout. Every key is optional; missing ones keep their default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub tolerances: ToleranceSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default, skip_serializing)]
    pub run: Option<toml::Table>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Keys set in `other` replace those in `self`.
    pub fn merge(mut self, other: ConfigFile) -> Self {
        macro_rules! take {
            ($($sec:ident . $key:ident),*) => {
                $(if other.$sec.$key.is_some() { self.$sec.$key = other.$sec.$key; })*
            };
        }
        take!(
            spectrum.mu,
            spectrum.nu,
            spectrum.x0,
            spectrum.t0,
            grid.x_min,
            grid.x_max,
            grid.x_step,
            grid.times,
            tolerances.gamma,
            tolerances.field,
            tolerances.bisection,
            output.path,
            output.format,
            verify.suite,
            verify.h,
            verify.half_width,
            verify.steps,
            verify.samples,
            verify.seed
        );
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Scaled `|Gamma|` treated as a pole of the Jost vector.
    pub gamma: f64,
    /// Scaled `|D|` at which a node is flagged singular.
    pub field: f64,
    /// Final bracket width when refining singular locations.
    pub bisection: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifySettings {
    pub suite: Suite,
    /// Finest finite-difference step of the residual study.
    pub h: f64,
    /// Scattering half-width `L`.
    pub half_width: f64,
    pub steps: usize,
    pub samples: usize,
    pub seed: u64,
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mu: f64,
    pub nu: f64,
    pub x0: Option<f64>,
    pub t0: Option<f64>,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub output_path: PathBuf,
    pub format: Format,
    pub verify: VerifySettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mu: 0.25,
            nu: 0.5,
            x0: None,
            t0: None,
            grid: GridSpec { x_min: -20.0, x_max: 20.0, x_step: 0.05, times: vec![-15.0, 1.0, 11.0] },
            tolerances: Tolerances {
                gamma: tolerances::GAMMA_SINGULAR,
                field: tolerances::TAU_SINGULAR,
                bisection: tolerances::BISECTION_WIDTH,
            },
            output_path: PathBuf::from("out"),
            format: Format::Csv,
            verify: VerifySettings {
                suite: Suite::All,
                h: 1e-3,
                half_width: 40.0,
                steps: 8000,
                samples: 1000,
                seed: 7,
            },
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    /// Applies `file` over the defaults and validates the result.
    pub fn resolve(file: &ConfigFile) -> Result<Self> {
        let d = RunConfig::default();
        let (sp, g, tl, o, v) = (&file.spectrum, &file.grid, &file.tolerances, &file.output, &file.verify);
        let cfg = RunConfig {
            mu: sp.mu.unwrap_or(d.mu),
            nu: sp.nu.unwrap_or(d.nu),
            x0: sp.x0,
            t0: sp.t0,
            grid: GridSpec {
                x_min: g.x_min.unwrap_or(d.grid.x_min),
                x_max: g.x_max.unwrap_or(d.grid.x_max),
                x_step: g.x_step.unwrap_or(d.grid.x_step),
                times: g.times.clone().unwrap_or(d.grid.times),
            },
            tolerances: Tolerances {
                gamma: tl.gamma.unwrap_or(d.tolerances.gamma),
                field: tl.field.unwrap_or(d.tolerances.field),
                bisection: tl.bisection.unwrap_or(d.tolerances.bisection),
            },
            output_path: o.path.clone().unwrap_or(d.output_path),
            format: o.format.unwrap_or(d.format),
            verify: VerifySettings {
                suite: v.suite.unwrap_or(d.verify.suite),
                h: v.h.unwrap_or(d.verify.h),
                half_width: v.half_width.unwrap_or(d.verify.half_width),
                steps: v.steps.unwrap_or(d.verify.steps),
                samples: v.samples.unwrap_or(d.verify.samples),
                seed: v.seed.unwrap_or(d.verify.seed),
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        make_spectrum(self.mu, self.nu)?;
        for (name, v) in [("x0", self.x0), ("t0", self.t0)] {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(Error::Config(format!("{name} must be finite")));
                }
            }
        }
        self.grid.validate()?;
        positive("tolerances.gamma", self.tolerances.gamma)?;
        positive("tolerances.field", self.tolerances.field)?;
        positive("tolerances.bisection", self.tolerances.bisection)?;
        positive("verify.h", self.verify.h)?;
        positive("verify.L", self.verify.half_width)?;
        if self.verify.steps < 4 || !self.verify.steps.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "verify.steps must be even and >= 4, got {}",
                self.verify.steps
            )));
        }
        if self.verify.samples == 0 {
            return Err(Error::Config("verify.samples must be at least 1".into()));
        }
        if self.output_path.as_os_str().is_empty() {
            return Err(Error::Config("output.path is empty".into()));
        }
        Ok(())
    }

    pub fn spectrum(&self) -> Result<SpectralPoint> {
        make_spectrum(self.mu, self.nu)
    }

    /// The normalized constants, with `x0` and `t0` replaced where given.
    /// Explicit constants drop the frame offset.
    pub fn norming(&self) -> Result<NormingConstant> {
        let s = self.spectrum()?;
        Ok(match (self.x0, self.t0) {
            (None, None) => normalize_phases(&s),
            (x0, t0) => {
                let n = normalize_phases(&s);
                NormingConstant::new(x0.unwrap_or(n.x0), t0.unwrap_or(n.t0))
            }
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.x0.is_none() && self.t0.is_none()
    }

    /// Every resolved value in file layout, so the echo re-runs exactly.
    pub fn echo(&self) -> ConfigFile {
        ConfigFile {
            spectrum: SpectrumSection { mu: Some(self.mu), nu: Some(self.nu), x0: self.x0, t0: self.t0 },
            grid: GridSection {
                x_min: Some(self.grid.x_min),
                x_max: Some(self.grid.x_max),
                x_step: Some(self.grid.x_step),
                times: Some(self.grid.times.clone()),
            },
            tolerances: ToleranceSection {
                gamma: Some(self.tolerances.gamma),
                field: Some(self.tolerances.field),
                bisection: Some(self.tolerances.bisection),
            },
            output: OutputSection { path: Some(self.output_path.clone()), format: Some(self.format) },
            verify: VerifySection {
                suite: Some(self.verify.suite),
                h: Some(self.verify.h),
                half_width: Some(self.verify.half_width),
                steps: Some(self.verify.steps),
                samples: Some(self.verify.samples),
                seed: Some(self.verify.seed),
            },
            run: None,
        }
    }
}
