//! Output directory handling, JSON/CSV emission and the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Record of one CLI invocation, written next to its outputs as
/// `<command>.manifest.json`. The timestamp and duration live only here so
/// every other file is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub artifact_version: String,
    pub exit_code: u8,
    /// File names relative to `output_dir`.
    pub outputs: Vec<String>,
    pub output_dir: String,
    pub duration_seconds: f64,
    pub timestamp: String,
}

pub struct Outputs {
    dir: PathBuf,
    written: Vec<String>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }

    /// Writes a header row and the rows, one comma-separated line each.
    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            text.push_str(&row.join(","));
            text.push('\n');
        }
        self.write(name, &text)
    }

    fn write(&mut self, name: &str, text: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(path)
    }

    pub fn finish(
        mut self,
        run: ManifestFields,
        elapsed: Duration,
        exit_code: u8,
    ) -> Result<PathBuf> {
        let manifest = RunManifest {
            command: run.command.clone(),
            parameters: run.parameters,
            tolerances: run.tolerances,
            seed: run.seed,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            exit_code,
            outputs: self.written.clone(),
            output_dir: self.dir.display().to_string(),
            duration_seconds: elapsed.as_secs_f64(),
            timestamp: humantime::format_rfc3339_millis(SystemTime::now()).to_string(),
        };
        let name = format!("{}.manifest.json", run.command);
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        let path = self.dir.join(&name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name);
        Ok(path)
    }
}

/// Per-command part of the manifest.
pub struct ManifestFields {
    pub command: String,
    pub parameters: serde_json::Value,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
