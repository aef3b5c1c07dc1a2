//! Per-run manifest: config echo, artifact version, file checksums and
//! resource usage. The manifest is a run record, not a data artifact, so
//! timing fields are expected to differ between otherwise identical runs.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::AppError;

#[derive(Serialize)]
struct FileEntry {
    path: String,
    sha256: String,
    bytes: u64,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    version: &'a str,
    config: &'a ExperimentConfig,
    files: Vec<FileEntry>,
    wall_clock_ms: u128,
    peak_memory_kb: u64,
}

pub struct ManifestBuilder {
    command: String,
    started: Instant,
    files: Vec<PathBuf>,
}

impl ManifestBuilder {
    pub fn new(command: &str) -> ManifestBuilder {
        ManifestBuilder {
            command: command.to_string(),
            started: Instant::now(),
            files: Vec::new(),
        }
    }

    pub fn record(&mut self, path: &Path) {
        self.files.push(path.to_path_buf());
    }

    /// Write `manifest.json` in `dir`, listing every recorded file with its
    /// checksum.
    pub fn write(self, dir: &Path, config: &ExperimentConfig) -> Result<(), AppError> {
        let mut files = Vec::with_capacity(self.files.len());
        for path in &self.files {
            let data = std::fs::read(path)
                .map_err(|e| AppError::Io(format!("reading {}: {e}", path.display())))?;
            let digest = Sha256::digest(&data);
            let name = path
                .strip_prefix(dir)
                .unwrap_or(path)
                .to_string_lossy()
                .into_owned();
            files.push(FileEntry {
                path: name,
                sha256: format!("{digest:x}"),
                bytes: data.len() as u64,
            });
        }
        files.sort_by(|a, b| a.path.cmp(&b.path));
        let manifest = RunManifest {
            command: &self.command,
            version: env!("CARGO_PKG_VERSION"),
            config,
            files,
            wall_clock_ms: self.started.elapsed().as_millis(),
            peak_memory_kb: peak_memory_kb(),
        };
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| AppError::Runtime(format!("manifest serialization: {e}")))?;
        let path = dir.join("manifest.json");
        std::fs::write(&path, text)
            .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))
    }
}

/// Peak resident set size in kB from the kernel's accounting; 0 where the
/// proc interface is unavailable.
fn peak_memory_kb() -> u64 {
    let Ok(status) = std::fs::read_to_string("/proc/self/status") else {
        return 0;
    };
    status
        .lines()
        .find_map(|l| l.strip_prefix("VmHWM:"))
        .and_then(|rest| rest.trim().trim_end_matches(" kB").trim().parse().ok())
        .unwrap_or(0)
}
