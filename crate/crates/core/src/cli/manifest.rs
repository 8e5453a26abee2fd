use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Provenance written next to every output file. Timing lives here and not in
/// the result itself, so results stay byte-identical across runs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub case: Option<String>,
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    /// sha256 of each input (tables, operator files) in canonical JSON.
    pub input_hashes: BTreeMap<String, String>,
    pub output_hashes: BTreeMap<String, String>,
    pub elapsed_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest { command: command.into(), tool_version: env!("CARGO_PKG_VERSION").into(), ..Default::default() }
    }

    pub fn case(mut self, case: impl Into<String>) -> Self {
        self.case = Some(case.into());
        self
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.insert(k.into(), v.to_string());
        self
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.input_hashes.insert(name.into(), sha256_hex(bytes));
    }

    pub fn add_output(&mut self, name: &str, bytes: &[u8]) {
        self.output_hashes.insert(name.into(), sha256_hex(bytes));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
