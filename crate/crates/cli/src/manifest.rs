use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Effective arguments after config expansion, without `--out` and `--config`.
    pub argv: Vec<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub tool_version: String,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<OutputDigest>,
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    Ok(hex::encode(Sha256::digest(fs::read(path)?)))
}

/// Drops the program name, `--out` and `--config` with their values.
pub fn reproducible_argv(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" || a == "--config" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") || a.starts_with("--config=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

pub fn manifest_path(dir: &Path, command: &str) -> PathBuf {
    dir.join(format!("{command}.manifest.json"))
}

pub fn load(path: &Path) -> Result<RunManifest, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Files whose digests differ between two manifests.
pub fn differing_outputs(a: &RunManifest, b: &RunManifest) -> Vec<String> {
    let mut bad = Vec::new();
    for o in &a.outputs {
        match b.outputs.iter().find(|p| p.file == o.file) {
            Some(p) if p.sha256 == o.sha256 => {}
            _ => bad.push(o.file.clone()),
        }
    }
    for p in &b.outputs {
        if !a.outputs.iter().any(|o| o.file == p.file) {
            bad.push(p.file.clone());
        }
    }
    bad
}
