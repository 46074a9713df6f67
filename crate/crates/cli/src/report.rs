//! Machine-readable reports with a stable human rendering.
//!
//! Reports are byte-identical across runs for identical inputs and flags:
//! all maps are ordered, every number is an exact rational string, and no
//! timestamps or host data ever enter the output.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verb: String,
    pub inputs: Vec<InputInfo>,
    pub flags: BTreeMap<String, String>,
    /// drives the exit code: true -> 0, false -> 1
    pub verdict: bool,
    pub details: Value,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        Report {
            verb: verb.to_string(),
            inputs: Vec::new(),
            flags: BTreeMap::new(),
            verdict: false,
            details: Value::Null,
        }
    }

    pub fn input(mut self, path: &str, bytes: &[u8]) -> Self {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.push(InputInfo {
            path: path.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        });
        self
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(mut self, verdict: bool) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn details<T: Serialize>(mut self, details: &T) -> Self {
        self.details = serde_json::to_value(details).expect("report details serialize");
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verb: {}\n", self.verb));
        for input in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", input.path, input.sha256));
        }
        for (k, v) in &self.flags {
            out.push_str(&format!("flag: {k}={v}\n"));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.verdict { "true" } else { "false" }
        ));
        render_value(&mut out, "", &self.details);
        out
    }
}

fn render_value(out: &mut String, prefix: &str, value: &Value) {
    match value {
        Value::Null => {}
        Value::Object(map) => {
            for (k, v) in map {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_value(out, &path, v);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| v.is_string() || v.is_number() || v.is_boolean()) {
                let rendered: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", rendered.join(", ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    render_value(out, &format!("{prefix}[{i}]"), v);
                }
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", render_scalar(other))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
