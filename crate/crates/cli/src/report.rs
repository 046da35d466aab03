use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Warn => 0,
            Status::Fail => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
        }
    }
}

/// Machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// `sha256:<hex>` of the canonical inputs.
    pub inputs_digest: String,
    pub results: Value,
    pub verdict: Status,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[u8], results: Value, verdict: Status, warnings: Vec<String>) -> Self {
        RunReport { command: command.to_string(), inputs_digest: digest(inputs), results, verdict, warnings }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// A report plus its plain-text rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.report.warnings {
            out.push_str("warning: ");
            out.push_str(w);
            out.push('\n');
        }
        out.push_str("verdict: ");
        out.push_str(self.report.verdict.as_str());
        out.push('\n');
        out
    }
}
