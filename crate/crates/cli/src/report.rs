use std::fmt;
use std::path::Path;

use extgraph::{CokernelPresentation, Error, IntMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_HYPOTHESIS: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HypothesisViolated(_) => EXIT_HYPOTHESIS,
            Error::BaseMismatch | Error::DimensionMismatch { .. } | Error::PresentationMismatch => {
                EXIT_MISMATCH
            }
            Error::InternalAssertion(_) => EXIT_INTERNAL,
            _ => EXIT_PARSE,
        };
        CliError::new(code, e.to_string())
    }
}

/// The result of one computation: text for humans, a JSON fragment, an
/// optional DOT rendering and diagnostics for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub log: Vec<String>,
    pub warnings: Vec<String>,
}

/// A file read from disk together with its digest.
pub struct Input {
    pub path: String,
    pub sha256: Option<String>,
    pub contents: Result<String, CliError>,
}

impl Input {
    pub fn read(path: &Path) -> Self {
        let display = path.display().to_string();
        match std::fs::read(path) {
            Ok(bytes) => Input {
                path: display.clone(),
                sha256: Some(hex::encode(Sha256::digest(&bytes))),
                contents: String::from_utf8(bytes)
                    .map_err(|_| CliError::new(EXIT_PARSE, format!("{display}: not valid UTF-8"))),
            },
            Err(e) => Input {
                path: display.clone(),
                sha256: None,
                contents: Err(CliError::new(EXIT_PARSE, format!("{display}: {e}"))),
            },
        }
    }

    pub fn text(&self) -> Result<&str, CliError> {
        match &self.contents {
            Ok(s) => Ok(s),
            Err(e) => Err(CliError::new(e.code, e.message.clone())),
        }
    }

    pub fn describe(&self) -> Value {
        json!({ "path": self.path, "sha256": self.sha256 })
    }
}

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn presentation(p: &CokernelPresentation) -> Value {
    json!({
        "group": p.to_string(),
        "invariant_factors": ints(p.invariant_factors()),
        "free_rank": p.free_rank(),
    })
}
