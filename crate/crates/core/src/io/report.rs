//! Report assembly and rendering.

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

pub const TOOL: &str = "chowkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBlock {
    pub code: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorBlock {
    fn from(e: &Error) -> Self {
        ErrorBlock { code: e.code().to_string(), message: e.to_string(), exit_code: e.exit_code() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<(String, u128)>,
}

/// Output of one run. Everything except `timing` is a pure function of
/// the job.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    /// The job with every default filled in.
    pub job: Value,
    pub result: Option<Value>,
    pub error: Option<ErrorBlock>,
    pub warnings: Vec<String>,
    pub timing: Timing,
}

impl Report {
    /// A report for a run that failed before a job could be built.
    pub fn failure(command: &str, source: &str, e: &Error) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            input: InputEcho { source: source.into(), sha256: String::new() },
            job: Value::Null,
            result: None,
            error: Some(ErrorBlock::from(e)),
            warnings: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code)
    }

    /// The deterministic part of the report: everything but timing.
    pub fn result_blocks(&self) -> Value {
        serde_json::json!({
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "input": self.input,
            "job": self.job,
            "result": self.result,
            "error": self.error,
            "warnings": self.warnings,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        out.push_str(&format!("input: {} (sha256 {})\n", self.input.source, self.input.sha256));
        if let Some(r) = &self.result {
            flatten("", r, &mut out);
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error [{}]: {}\n", e.code, e.message));
        }
        out.push_str(&format!("elapsed: {} ms\n", self.timing.total_ms));
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
