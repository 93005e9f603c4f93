use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// Version tag carried by the manifest and by every JSONL record.
pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_NAME: &str = "manifest.json";

/// Record of one subcommand run, written next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub subcommand: String,
    pub resolved_config: Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// SHA-256 of the canonical JSON of subcommand, resolved config and seed.
    pub input_hash: String,
    pub outputs: Vec<String>,
    pub wall_time_seconds: f64,
}

pub fn input_hash(subcommand: &str, resolved_config: &Value, seed: Option<u64>) -> String {
    let canonical = serde_json::json!({
        "subcommand": subcommand,
        "config": resolved_config,
        "seed": seed,
    });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

/// An output directory that tracks the files written into it and closes
/// with a single manifest.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: Vec<String>,
    started: Instant,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).map_err(|e| io_error(root, e))?;
        Ok(Self { root: root.to_path_buf(), files: Vec::new(), started: Instant::now() })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.root.join(name);
        fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        Ok(())
    }

    pub fn finish(self, subcommand: &str, resolved_config: Value, seed: Option<u64>) -> Result<RunManifest> {
        let manifest = RunManifest {
            schema_version: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            input_hash: input_hash(subcommand, &resolved_config, seed),
            resolved_config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self.files,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = self.root.join(MANIFEST_NAME);
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?;
        Ok(manifest)
    }
}

/// Parse `min:max:step` into the inclusive list of values.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Config(format!("cannot parse range '{text}'; expected min:max:step"));
    let parts: Vec<f64> =
        text.split(':').map(|s| s.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    let [lo, hi, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| lo + k as f64 * step).collect())
}
