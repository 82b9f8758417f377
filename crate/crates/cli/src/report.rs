//! Reports: one structured record per command, emitted as JSON or text.
//! The text form is rendered from the JSON value, so it never carries data
//! the machine form lacks.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub status: Status,
    pub results: Value,
    pub checks: Vec<Check>,
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input_digest: None,
            status: Status::Pass,
            results: Value::Null,
            checks: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn fail_with(mut self, kind: impl Into<String>, message: impl Into<String>) -> Self {
        self.status = Status::Error;
        self.error = Some(ErrorInfo { kind: kind.into(), message: message.into() });
        self
    }

    /// Overall status: error beats fail beats pass.
    pub fn settle(&mut self) {
        if self.error.is_some() || self.checks.iter().any(|c| c.status == Status::Error) {
            self.status = Status::Error;
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            self.status = Status::Fail;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input_digest: {d}");
        }
        let _ = writeln!(out, "status: {}", self.status.label());
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {}: {}", e.kind, e.message);
        }
        if !self.results.is_null() {
            let _ = writeln!(out, "results:");
            render(&mut out, &self.results, 1);
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {} ({}): {}", c.status.label(), c.id, c.anchor, c.detail);
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Hex SHA-256 of the canonical inputs, joined by newlines.
pub fn digest(inputs: &[String]) -> String {
    let mut h = Sha256::new();
    for (i, s) in inputs.iter().enumerate() {
        if i > 0 {
            h.update(b"\n");
        }
        h.update(s.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
