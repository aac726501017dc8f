//! Command results, the JSON envelope and exit status.

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::sync::OnceLock;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A check ran and failed.
    Fail,
    /// The requested quantity does not exist or could not be established.
    Refused,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Refused => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub status: Status,
    pub reason: Option<String>,
    pub inputs: Vec<InputDigest>,
    pub text: String,
    pub result: Value,
}

impl Report {
    pub fn new(inputs: Vec<InputDigest>) -> Self {
        Report {
            status: Status::Pass,
            reason: None,
            inputs,
            text: String::new(),
            result: json!({}),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// A labelled check line; a failing check fails the report.
    pub fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        let _ = writeln!(self.text, "{} {}", mark(ok), what.as_ref());
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn refuse(&mut self, reason: impl Into<String>) {
        self.status = Status::Refused;
        self.reason = Some(reason.into());
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.status = Status::Fail;
        self.reason = Some(reason.into());
    }

    pub fn envelope(&self, command: &[String]) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": self.inputs,
            "status": self.status,
            "reason": self.reason,
            "result": self.result,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.clone();
        if let Some(reason) = &self.reason {
            let label = match self.status {
                Status::Refused => "refused",
                _ => "failed",
            };
            let _ = writeln!(out, "{}: {reason}", paint(label, false));
        }
        out
    }
}

fn color_enabled() -> bool {
    static ENABLED: OnceLock<bool> = OnceLock::new();
    *ENABLED.get_or_init(|| match std::env::var("CATCOVER_COLOR").as_deref() {
        Ok("always" | "1" | "true") => true,
        Ok("auto") => std::io::stdout().is_terminal(),
        _ => false,
    })
}

fn paint(word: &str, ok: bool) -> String {
    if color_enabled() {
        let code = if ok { 32 } else { 31 };
        format!("\x1b[{code}m{word}\x1b[0m")
    } else {
        word.to_owned()
    }
}

pub fn mark(ok: bool) -> String {
    paint(if ok { "PASS" } else { "FAIL" }, ok)
}
