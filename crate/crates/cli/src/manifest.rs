//! Run manifests: the resolved configuration of a command plus content
//! hashes of everything it read and wrote.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn rel(path: &Path, root: &Path) -> String {
    path.strip_prefix(root).unwrap_or(path).to_string_lossy().replace('\\', "/")
}

pub fn hash_file(path: &Path, root: &Path) -> Result<FileHash> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(FileHash { path: rel(path, root), sha256: sha256_hex(&bytes) })
}

/// Collects output files under one directory and finishes with the manifest.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    written: Vec<FileHash>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating {}", root.display()))?;
        Ok(OutputDir { root: root.to_path_buf(), written: Vec::new() })
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }

    pub fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        self.record(rel, bytes);
        Ok(())
    }

    /// Registers a file some other code already wrote.
    pub fn record(&mut self, rel: &str, bytes: &[u8]) {
        self.written.retain(|f| f.path != rel);
        self.written.push(FileHash { path: rel.to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn finish(mut self, command: &'static str, config: Value, mut inputs: Vec<FileHash>) -> Result<PathBuf> {
        inputs.sort_by(|a, b| a.path.cmp(&b.path));
        self.written.sort_by(|a, b| a.path.cmp(&b.path));
        let m = Manifest {
            tool: "asevo",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs,
            outputs: self.written,
        };
        let mut text = serde_json::to_string_pretty(&m)?;
        text.push('\n');
        let path = self.root.join(MANIFEST);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
