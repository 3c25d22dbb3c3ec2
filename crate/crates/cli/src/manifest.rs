//! Run manifests: what ran, on which inputs, producing which outputs.
//!
//! Every manifest records the exact argv, the effective configuration, and a
//! SHA-256 of each input file, so any result file can be traced back to the
//! bytes and settings that produced it.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub version: String,
    pub workers: usize,
    pub inputs: Vec<InputHash>,
    pub outputs: Vec<String>,
    pub config: serde_json::Value,
    pub duration_seconds: f64,
}

pub struct ManifestBuilder {
    command: String,
    inputs: Vec<InputHash>,
    outputs: Vec<String>,
    config: serde_json::Value,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, config: serde_json::Value) -> ManifestBuilder {
        ManifestBuilder {
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            config,
            started: Instant::now(),
        }
    }

    pub fn add_input(&mut self, path: &Path) -> anyhow::Result<()> {
        let bytes = std::fs::read(path)
            .map_err(|e| anyhow::anyhow!("reading input {}: {e}", path.display()))?;
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(InputHash { path: path.display().to_string(), sha256: hex });
        Ok(())
    }

    pub fn add_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn write(self, path: &PathBuf) -> anyhow::Result<()> {
        let manifest = RunManifest {
            command: self.command,
            argv: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            workers: rayon::current_num_threads(),
            inputs: self.inputs,
            outputs: self.outputs,
            config: self.config,
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let json = serde_json::to_string_pretty(&manifest)?;
        std::fs::write(path, json)
            .map_err(|e| anyhow::anyhow!("writing manifest {}: {e}", path.display()))?;
        Ok(())
    }
}
