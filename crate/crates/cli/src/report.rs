//! Report envelope, error classification and exit codes.

use std::fmt;

use maslov_core::{ErrorKind, MaslovError};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_SUITE_FAILURE: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Input,
    Precondition,
    Internal,
}

impl Class {
    pub fn exit_code(self) -> u8 {
        match self {
            Class::Input => EXIT_INPUT,
            Class::Precondition => EXIT_PRECONDITION,
            Class::Internal => EXIT_INTERNAL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CliError {
    pub class: Class,
    pub tag: String,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { class: Class::Input, tag: "invalid_input".into(), message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag, self.message)
    }
}

impl From<MaslovError> for CliError {
    fn from(e: MaslovError) -> Self {
        let class = match e.kind() {
            ErrorKind::Input => Class::Input,
            ErrorKind::Precondition => Class::Precondition,
            ErrorKind::Internal => Class::Internal,
        };
        CliError { class, tag: e.tag().into(), message: e.to_string() }
    }
}

/// How a successful computation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A property suite ran but some trial failed.
    SuiteFailed,
    /// Two independent engines disagreed.
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => EXIT_OK,
            Status::SuiteFailed => EXIT_SUITE_FAILURE,
            Status::Mismatch => EXIT_INTERNAL,
        }
    }
}

pub struct Outcome {
    pub results: Value,
    pub diagnostics: Value,
    pub status: Status,
}

impl Outcome {
    pub fn ok(results: Value, diagnostics: Value) -> Self {
        Outcome { results, diagnostics, status: Status::Ok }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Value,
    pub inputs_digest: String,
    pub results: Value,
    pub diagnostics: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<CliError>,
    pub version: &'static str,
    pub seed: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

/// SHA-256 of the compact serialization; object keys are sorted, so equal
/// inputs hash equally regardless of how they were written.
pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("plain JSON");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
