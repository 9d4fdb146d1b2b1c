use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to reproduce the outputs of one invocation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Arguments after the program name, without `--out` and `--workers`,
    /// with the resolved `--seed` appended when it was generated.
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub inputs: Vec<InputDigest>,
}

pub fn digest_file(path: &Path) -> Result<InputDigest, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

/// Drops the flags that only affect where or how fast outputs are produced.
pub fn replayable_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_next = false;
    for arg in args {
        if skip_next {
            skip_next = false;
            continue;
        }
        if arg == "--out" || arg == "--workers" {
            skip_next = true;
            continue;
        }
        if arg.starts_with("--out=") || arg.starts_with("--workers=") {
            continue;
        }
        out.push(arg.clone());
    }
    out
}

pub struct ManifestBuilder {
    pub manifest: RunManifest,
}

impl ManifestBuilder {
    pub fn new(subcommand: &str, argv: Vec<String>, parameters: serde_json::Value) -> Self {
        ManifestBuilder {
            manifest: RunManifest {
                schema_version: SCHEMA_VERSION,
                tool: "ecgkit".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                subcommand: subcommand.to_string(),
                argv,
                parameters,
                seed: None,
                inputs: Vec::new(),
            },
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        self.manifest.inputs.push(digest_file(path)?);
        Ok(())
    }

    /// Records the seed, appending it to `argv` when it was not given.
    pub fn seed(&mut self, seed: u64, explicit: bool) {
        self.manifest.seed = Some(seed);
        if !explicit {
            self.manifest.argv.push("--seed".into());
            self.manifest.argv.push(seed.to_string());
        }
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf, CliError> {
        let path = dir.join(MANIFEST_FILE);
        write_json(&path, &self.manifest)?;
        Ok(path)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::runtime(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

pub fn read_manifest(path: &Path) -> Result<RunManifest, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    if manifest.schema_version != SCHEMA_VERSION {
        return Err(CliError::input(format!(
            "manifest schema version {} is not supported",
            manifest.schema_version
        )));
    }
    Ok(manifest)
}
