use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One result line: a JSON object, or a CSV row under a shared header.
///
/// Big integers are carried as decimal strings, reals as JSON numbers (which
/// serde_json prints in shortest round-trip form).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub version: String,
    pub timestamp: String,
}

impl OutputRecord {
    pub fn new(command: &str, parameters: Map<String, Value>, timestamp: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters,
            results: Map::new(),
            version: VERSION.to_string(),
            timestamp: timestamp.to_string(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    /// Big integers go out as strings, never as floats.
    pub fn put_big(&mut self, key: &str, value: &impl std::fmt::Display) -> &mut Self {
        self.put(key, value.to_string())
    }

    pub fn put_real(&mut self, key: &str, value: f64) -> &mut Self {
        // JSON has no NaN or infinities.
        let v = serde_json::Number::from_f64(value).map_or_else(|| Value::String(value.to_string()), Value::Number);
        self.put(key, v)
    }

    pub fn same_key(&self, other: &OutputRecord) -> bool {
        self.command == other.command && self.parameters == other.parameters && self.version == other.version
    }

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["command".to_string(), "version".to_string(), "timestamp".to_string()];
        h.extend(self.parameters.keys().map(|k| format!("parameters.{k}")));
        h.extend(self.results.keys().map(|k| format!("results.{k}")));
        h
    }

    fn csv_row(&self) -> Vec<String> {
        let mut r = vec![self.command.clone(), self.version.clone(), self.timestamp.clone()];
        r.extend(self.parameters.values().map(cell));
        r.extend(self.results.values().map(cell));
        r
    }
}

/// CSV text of a scalar: strings unquoted, numbers exactly as in JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Writes records; CSV gets a single header taken from the first record.
pub fn emit(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.csv_header())?;
            }
            for r in records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
