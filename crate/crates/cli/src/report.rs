//! Deterministic JSON run reports. Wall time goes to stderr only, so the
//! serialized report is byte-identical across runs with fixed inputs.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    /// input name -> sha256 of its bytes
    pub inputs: BTreeMap<String, String>,
    pub results: serde_json::Value,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: serde_json::Value::Null,
        }
    }

    pub fn record_input(&mut self, name: &str, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.insert(name.to_string(), format!("{:x}", hasher.finalize()));
    }

    pub fn set_results(&mut self, value: serde_json::Value) {
        self.results = value;
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Write to the given path, or stdout when none; wall time to stderr.
    pub fn emit(&self, json_path: Option<&std::path::Path>, started: Instant) -> std::io::Result<()> {
        let text = self.to_json();
        match json_path {
            Some(path) => std::fs::write(path, &text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        eprintln!("{}: completed in {:?}", self.command, started.elapsed());
        Ok(())
    }
}
