//! Run metadata and deterministic output plumbing for the command-line
//! front-end: a manifest describing exactly what was run, a SHA-256
//! checksum binding it to the emitted CSV bytes, and atomic file writes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::error::Result;

/// Version tag of the physical-constant set compiled into
/// [`units`](crate::units).
pub const CONSTANT_SET_VERSION: &str = "codata-2018";

/// Machine-readable description of one command invocation, written
/// alongside the CSV so a reader can verify both provenance and integrity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunManifest {
    /// Subcommand name.
    pub command: String,
    /// Flag values as given (stringified), keyed by flag name.
    pub parameters: BTreeMap<String, String>,
    /// RNG seed; 0 for commands whose pipeline is seedless.
    pub seed: u64,
    /// Identifier of the compiled-in physical constants.
    pub constant_set_version: String,
    /// Lowercase-hex SHA-256 of the emitted CSV bytes.
    pub output_checksum: String,
}

impl RunManifest {
    /// Build a manifest for `command` over `parameters`, checksumming the
    /// CSV bytes it accompanies.
    pub fn new(
        command: &str,
        parameters: impl IntoIterator<Item = (String, String)>,
        seed: u64,
        csv_bytes: &[u8],
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: parameters.into_iter().collect(),
            seed,
            constant_set_version: CONSTANT_SET_VERSION.to_string(),
            output_checksum: checksum_hex(csv_bytes),
        }
    }

    /// Serialize as JSON with all object keys sorted, a trailing newline,
    /// and no volatile fields — byte-identical for identical runs.
    pub fn to_json(&self) -> String {
        let mut params = serde_json::Map::new();
        // BTreeMap iteration is ordered, keeping the object sorted.
        for (k, v) in &self.parameters {
            params.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        let mut root = serde_json::Map::new();
        root.insert("command".into(), serde_json::Value::String(self.command.clone()));
        root.insert(
            "constant_set_version".into(),
            serde_json::Value::String(self.constant_set_version.clone()),
        );
        root.insert("output_checksum".into(), serde_json::Value::String(self.output_checksum.clone()));
        root.insert("parameters".into(), serde_json::Value::Object(params));
        root.insert("seed".into(), serde_json::Value::Number(self.seed.into()));
        let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("string/number tree always serializes");
        out.push('\n');
        out
    }
}

/// Lowercase-hex SHA-256 digest.
pub fn checksum_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Write `bytes` to `path` atomically: the data lands in a unique
/// temporary file in the destination directory first and is renamed into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let stamp = format!(
        ".{}.{}.tmp",
        std::process::id(),
        TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    );
    let mut temp: PathBuf = dir.map(Path::to_path_buf).unwrap_or_default();
    let name = path
        .file_name()
        .ok_or_else(|| crate::Error::Io(format!("no file name in {}", path.display())))?;
    temp.push(format!("{}{stamp}", name.to_string_lossy()));
    std::fs::write(&temp, bytes)?;
    if let Err(e) = std::fs::rename(&temp, path) {
        let _ = std::fs::remove_file(&temp);
        return Err(e.into());
    }
    Ok(())
}

/// The manifest path accompanying a CSV output path: the extension is
/// replaced by `manifest.json` (`run.csv` → `run.manifest.json`).
pub fn manifest_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("manifest.json")
}
