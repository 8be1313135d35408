//! Data files and the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{Format, RunConfig};
use crate::error::Result;
use crate::fields::{FieldSample, SingularPoint};

pub const SLICE_HEADER: &str = "x,t,u,eta,gamma,singular";
pub const SINGULAR_HEADER: &str = "t,kind,x,bracket,residual";
pub const MANIFEST: &str = "manifest.txt";

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Files written so far by one command. Unless [`FileSet::keep`] is called,
/// dropping the set removes them, and the output directory if this run
/// created it.
pub struct FileSet {
    dir: PathBuf,
    created_dir: bool,
    files: Vec<PathBuf>,
    keep: bool,
}

impl FileSet {
    pub fn create(dir: &Path) -> Result<Self> {
        let created_dir = !dir.exists();
        fs::create_dir_all(dir)?;
        Ok(FileSet { dir: dir.to_path_buf(), created_dir, files: Vec::new(), keep: false })
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        self.files.push(path.clone());
        let mut f = fs::File::create(&path)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        Ok(path)
    }

    pub fn names(&self) -> Vec<String> {
        self.files.iter().filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned())).collect()
    }

    pub fn keep(mut self) -> Vec<PathBuf> {
        self.keep = true;
        std::mem::take(&mut self.files)
    }
}

impl Drop for FileSet {
    fn drop(&mut self) {
        if self.keep {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if self.created_dir {
            let _ = fs::remove_dir(&self.dir);
        }
    }
}

pub fn slice_name(index: usize, t: f64, format: Format) -> String {
    format!("slice_{index}_t{t}.{}", format.extension())
}

pub fn slice_csv(samples: &[FieldSample]) -> String {
    let mut out = String::with_capacity(96 * (samples.len() + 1));
    out.push_str(SLICE_HEADER);
    out.push('\n');
    for s in samples {
        let (u, eta) =
            if s.singular { (String::new(), String::new()) } else { (fmt_f64(s.u), fmt_f64(s.eta)) };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(s.x),
            fmt_f64(s.t),
            u,
            eta,
            fmt_f64(s.gamma),
            s.singular as u8
        ));
    }
    out
}

#[derive(Serialize)]
struct SampleRecord {
    x: f64,
    t: f64,
    u: Option<f64>,
    eta: Option<f64>,
    /// Absent once `Gamma` overflows.
    gamma: Option<f64>,
    singular: bool,
}

pub fn slice_json(samples: &[FieldSample]) -> Result<String> {
    let recs: Vec<SampleRecord> = samples
        .iter()
        .map(|s| SampleRecord {
            x: s.x,
            t: s.t,
            u: (!s.singular).then_some(s.u),
            eta: (!s.singular).then_some(s.eta),
            gamma: s.gamma.is_finite().then_some(s.gamma),
            singular: s.singular,
        })
        .collect();
    to_json(&recs)
}

pub fn singular_csv(points: &[SingularPoint]) -> String {
    let mut out = String::from(SINGULAR_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(p.t),
            p.kind.label(),
            fmt_f64(p.x),
            fmt_f64(p.bracket),
            fmt_f64(p.residual)
        ));
    }
    out
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| crate::Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// What a command did, written as TOML next to its data files.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config: RunConfig,
    pub version: String,
    pub duration_seconds: f64,
    /// Suite name to pass/fail.
    pub suites: BTreeMap<String, bool>,
    /// Singular nodes (eval) or singular points (singularities) per time.
    pub singular_counts: Vec<usize>,
    pub files: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        RunManifest {
            command: command.to_string(),
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: 0.0,
            suites: BTreeMap::new(),
            singular_counts: Vec::new(),
            files: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.suites.values().all(|p| *p)
    }

    /// The config echo followed by a `[run]` table.
    pub fn render(&self) -> Result<String> {
        let echo = toml::to_string(&self.config.echo()).map_err(|e| crate::Error::Io(e.to_string()))?;
        let mut run = toml::Table::new();
        run.insert("command".into(), self.command.clone().into());
        run.insert("version".into(), self.version.clone().into());
        run.insert("duration_seconds".into(), self.duration_seconds.into());
        let counts: Vec<toml::Value> = self.singular_counts.iter().map(|c| (*c as i64).into()).collect();
        run.insert("singular_counts".into(), counts.into());
        run.insert("singular_total".into(), (self.singular_counts.iter().sum::<usize>() as i64).into());
        let files: Vec<toml::Value> = self.files.iter().map(|f| f.clone().into()).collect();
        run.insert("files".into(), files.into());
        let mut suites = toml::Table::new();
        for (k, v) in &self.suites {
            suites.insert(k.clone(), (if *v { "pass" } else { "fail" }).into());
        }
        run.insert("suites".into(), suites.into());
        let mut wrap = toml::Table::new();
        wrap.insert("run".into(), run.into());
        let tail = toml::to_string(&wrap).map_err(|e| crate::Error::Io(e.to_string()))?;
        Ok(format!("{echo}\n{tail}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::ConfigFile;
    use num_complex::Complex64;

    fn sample(x: f64, singular: bool) -> FieldSample {
        FieldSample {
            x,
            t: 1.0,
            u: if singular { f64::NAN } else { 0.1 },
            eta: if singular { f64::NAN } else { -0.2 },
            gamma: 3.0,
            n: Complex64::new(1.0, 0.0),
            singular,
        }
    }

    #[test]
    fn csv_rows() {
        let text = slice_csv(&[sample(0.5, false), sample(1.0, true)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SLICE_HEADER);
        assert_eq!(
            lines[1],
            "5.0000000000000000e-1,1.0000000000000000e0,1.0000000000000001e-1,-2.0000000000000001e-1,3.0000000000000000e0,0"
        );
        assert_eq!(lines[2], "1.0000000000000000e0,1.0000000000000000e0,,,3.0000000000000000e0,1");
    }

    #[test]
    fn formatted_values_round_trip() {
        for v in [0.1, -1.0 / 3.0, 6.02e23, 1e-300, -2.5e-17] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_mirrors_csv() {
        let text = slice_json(&[sample(0.5, false), sample(1.0, true)]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["u"], 0.1);
        assert!(v[1]["u"].is_null());
        assert_eq!(v[1]["singular"], true);
    }

    #[test]
    fn manifest_reloads_as_config() {
        let cfg = RunConfig::default();
        let mut m = RunManifest::new("eval", &cfg);
        m.singular_counts = vec![0, 2, 1];
        m.suites.insert("algebra".into(), true);
        let text = m.render().unwrap();
        assert!(text.contains("singular_total = 3"));
        let back = RunConfig::resolve(&ConfigFile::parse(&text).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn dropped_set_removes_files() {
        let root = tempfile::tempdir().unwrap();
        let dir = root.path().join("run");
        {
            let mut set = FileSet::create(&dir).unwrap();
            set.write("a.csv", b"x\n").unwrap();
            assert!(dir.join("a.csv").exists());
        }
        assert!(!dir.exists());
        let mut set = FileSet::create(&dir).unwrap();
        set.write("b.csv", b"x\n").unwrap();
        set.keep();
        assert!(dir.join("b.csv").exists());
    }
}
