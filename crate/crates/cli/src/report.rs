//! Run reports and failure kinds.

use std::fmt;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use orbifukaya::report::Check;

pub enum Failure {
    Usage(String),
    Io(String),
    /// The input was read but the computation rejected it.
    Domain(orbifukaya::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "usage: {}", s),
            Failure::Io(s) => write!(f, "{}", s),
            Failure::Domain(e) => write!(f, "{}", e),
        }
    }
}

pub struct Input {
    pub path: String,
    pub text: String,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> Result<Input, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))?;
        let sha256 = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{:02x}", b)).collect();
        Ok(Input { path: path.display().to_string(), text, sha256 })
    }
}

#[derive(Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize, Deserialize)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Identical inputs give identical reports apart from `elapsed_ms`.
#[derive(Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub passed: bool,
    pub checks: Vec<ReportCheck>,
    pub result: Value,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &[String], inputs: &[Input], checks: Vec<Check>, result: Value, elapsed: Duration) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.to_vec(),
            inputs: inputs.iter().map(|i| InputDigest { path: i.path.clone(), sha256: i.sha256.clone() }).collect(),
            passed: checks.iter().all(|c| c.passed),
            checks: checks.into_iter().map(|c| ReportCheck { name: c.name, passed: c.passed, detail: c.detail }).collect(),
            result,
            elapsed_ms: elapsed.as_millis(),
        }
    }
}
