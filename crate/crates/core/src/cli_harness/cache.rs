//! Append-only JSON-lines store of command results.
//!
//! Each line is one record serialized with sorted keys, plus a `checksum` field
//! holding the SHA-256 of the same line without it. Lines that fail to parse or
//! whose checksum does not match are skipped with a warning.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_FILE: &str = "results.jsonl";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub payload: Value,
    /// Side channel; never part of the payload.
    pub wall_time_ms: u64,
    pub library_version: String,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Value, payload: Value, wall_time_ms: u64) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            payload,
            wall_time_ms,
            library_version: LIBRARY_VERSION.to_string(),
        }
    }

    pub fn is_stale(&self) -> bool {
        self.library_version != LIBRARY_VERSION || self.schema_version != SCHEMA_VERSION
    }
}

/// Serializes through `Value`, whose maps are ordered, so keys come out sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| Error::Io(e.to_string()))
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// The line written for a record.
pub fn encode_line(record: &ResultRecord) -> Result<String> {
    let body = canonical_json(record)?;
    let mut v: Value = serde_json::from_str(&body).map_err(|e| Error::Io(e.to_string()))?;
    v["checksum"] = Value::String(sha256_hex(&body));
    canonical_json(&v)
}

/// Parses and verifies one line.
pub fn decode_line(line: &str) -> std::result::Result<ResultRecord, String> {
    let mut v: Value = serde_json::from_str(line).map_err(|e| format!("unparsable line: {e}"))?;
    let obj = v.as_object_mut().ok_or("line is not a JSON object")?;
    let stored = match obj.remove("checksum") {
        Some(Value::String(s)) => s,
        _ => return Err("missing checksum".into()),
    };
    let body = canonical_json(&v).map_err(|e| e.to_string())?;
    if sha256_hex(&body) != stored {
        return Err("checksum mismatch".into());
    }
    serde_json::from_value(v).map_err(|e| format!("malformed record: {e}"))
}

#[derive(Clone, Debug)]
pub struct Cache {
    path: PathBuf,
}

#[derive(Clone, Debug, Default)]
pub struct Loaded {
    pub records: Vec<ResultRecord>,
    /// One message per skipped line, with its 1-based line number.
    pub skipped: Vec<String>,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { path: dir.join(CACHE_FILE) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> Result<Loaded> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Loaded::default()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Loaded::default();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match decode_line(line) {
                Ok(r) => out.records.push(r),
                Err(reason) => {
                    log::warn!("{}:{}: skipped ({reason})", self.path.display(), k + 1);
                    out.skipped.push(format!("line {}: {reason}", k + 1));
                }
            }
        }
        Ok(out)
    }

    /// Most recent record for the command and inputs.
    pub fn lookup(&self, command: &str, inputs: &Value) -> Result<Option<ResultRecord>> {
        Ok(self
            .load()?
            .records
            .into_iter()
            .rev()
            .find(|r| r.command == command && r.inputs == *inputs))
    }

    pub fn append(&self, record: &ResultRecord) -> Result<()> {
        let line = encode_line(record)?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        Ok(())
    }
}
