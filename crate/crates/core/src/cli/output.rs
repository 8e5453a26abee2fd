use serde_json::Value;

use super::manifest::RunManifest;
use super::{CliError, Format};

/// A command result in all three renderings.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// Base name of the output file.
    pub name: String,
    pub passed: bool,
    pub json: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: String,
    pub manifest: RunManifest,
}

impl Outcome {
    pub fn new(name: &str, manifest: RunManifest) -> Self {
        Outcome {
            name: name.into(),
            passed: true,
            json: Value::Null,
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            text: String::new(),
            manifest,
        }
    }

    pub fn table<S: ToString>(mut self, header: &[S], rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header.iter().map(|h| h.to_string()).collect();
        self.csv_rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            // serde_json maps are ordered, so this output is deterministic
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Failed(e.to_string()))? + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let fail = |e: csv::Error| CliError::Failed(e.to_string());
                w.write_record(&self.csv_header).map_err(fail)?;
                for r in &self.csv_rows {
                    w.write_record(r).map_err(fail)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv is utf-8"))
            }
        }
    }
}
