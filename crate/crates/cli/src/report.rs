//! The JSON run report and the mapping from errors to exit codes.

use concover::{Caps, Error};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A search ran out of budget before settling the question.
    UnknownBudgetExhausted,
    /// The run finished but a check it performs did not hold.
    Failed,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Budget {
    pub members: usize,
    pub pool: usize,
    pub nodes: u64,
    pub exhaustive: bool,
    pub caps: Caps,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Parameters and SHA-256 digests of the canonical input texts.
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip)]
    pub exit_code: u8,
}

pub struct Failure;

impl Failure {
    pub const INPUT: u8 = 2;
    pub const INTERNAL: u8 = 3;
    pub const RESOURCE: u8 = 4;

    pub fn code(e: &Error) -> u8 {
        match e {
            Error::Input(_) | Error::Precondition(_) => Self::INPUT,
            Error::Internal(_) => Self::INTERNAL,
            Error::Resource { .. } => Self::RESOURCE,
        }
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
