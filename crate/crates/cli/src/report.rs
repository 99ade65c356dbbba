use std::fmt::Write as _;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};

/// Exit status contract: 0 verified, 1 verification failed, 2 bad input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed,
    Usage,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Verified
        } else {
            Self::Failed
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Self::Verified => 0,
            Self::Failed => 1,
            Self::Usage => 2,
        }
    }

    pub fn exit(self) -> ExitCode {
        ExitCode::from(self.code())
    }

    fn label(self) -> &'static str {
        match self {
            Self::Verified => "ok",
            Self::Failed => "failed",
            Self::Usage => "error",
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub json: Value,
    pub human: String,
}

impl Report {
    pub fn new(command: &'static str, status: Status, json: Value, human: String) -> Self {
        Self { command, status, json, human }
    }

    pub fn error(command: &'static str, err: impl std::fmt::Display) -> Self {
        let msg = err.to_string();
        Self { command, status: Status::Usage, json: json!({ "error": msg }), human: format!("error: {msg}\n") }
    }

    pub fn render_json(&self) -> String {
        let mut doc = json!({
            "schema": 1,
            "command": self.command,
            "status": self.status.label(),
            "exit_code": self.status.code(),
        });
        if let (Value::Object(out), Value::Object(body)) = (&mut doc, &self.json) {
            out.extend(body.clone());
        } else {
            doc["result"] = self.json.clone();
        }
        let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
        s.push('\n');
        s
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serialises")
}

/// `name: value` lines with aligned values.
pub fn lines(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

pub fn matrix(entries: &[[String; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", entries[0][0], entries[0][1], entries[1][0], entries[1][1])
}
