//! Output directory with a manifest of every file written.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    version: &'static str,
    seed: u64,
    threads: usize,
    config: &'a RunConfig,
    files: &'a [FileEntry],
    timings: &'a [StageTiming],
    summary: &'a [String],
}

pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileEntry>,
    timings: Vec<StageTiming>,
    summary: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(root).map_err(|e| CliError::io(root.display(), e))?;
        Ok(OutputDir { root: root.to_path_buf(), files: Vec::new(), timings: Vec::new(), summary: Vec::new() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> &[FileEntry] {
        &self.files
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.root.join(name);
        std::fs::write(&path, bytes).map_err(|e| CliError::io(path.display(), e))?;
        let entry = FileEntry { name: name.to_owned(), sha256: hex::encode(Sha256::digest(bytes)), bytes: bytes.len() as u64 };
        match self.files.iter_mut().find(|f| f.name == name) {
            Some(f) => *f = entry,
            None => self.files.push(entry),
        }
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::stage("write", e))?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    /// Writes through an in-memory buffer so the hash covers exactly the bytes
    /// on disk.
    pub fn write_with<F>(&mut self, name: &str, f: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<(), CliError>,
    {
        let mut buf = Vec::new();
        f(&mut buf)?;
        self.write(name, &buf)
    }

    /// Prints a summary line and records it in the manifest.
    pub fn summary(&mut self, line: String) {
        println!("{line}");
        self.summary.push(line);
    }

    /// Runs `f`, recording its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(StageTiming { stage: stage.to_owned(), seconds: start.elapsed().as_secs_f64() });
        out
    }

    pub fn finish(self, command: &str, config: &RunConfig, threads: usize) -> Result<Vec<FileEntry>, CliError> {
        let m = Manifest {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed: config.seed,
            threads,
            config,
            files: &self.files,
            timings: &self.timings,
            summary: &self.summary,
        };
        let path = self.root.join(MANIFEST_NAME);
        let mut bytes = serde_json::to_vec_pretty(&m).map_err(|e| CliError::stage("write", e))?;
        bytes.push(b'\n');
        std::fs::write(&path, bytes).map_err(|e| CliError::io(path.display(), e))?;
        Ok(self.files)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
