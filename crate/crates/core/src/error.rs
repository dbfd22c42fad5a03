// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// A single broken rule, located by a dotted path into the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub rule: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, rule: &'static str, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            rule,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}: {}", self.rule, self.message)
        } else {
            write!(f, "{} {}: {}", self.path, self.rule, self.message)
        }
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    MalformedJson(#[from] serde_json::Error),

    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },

    #[error("invariant violation: {}", join(.0))]
    InvariantViolation(Vec<Violation>),

    #[error("unknown units label {0:?}")]
    UnitUnknown(String),

    #[error("cannot convert {from} to {to}")]
    IncompatibleUnits { from: String, to: String },

    #[error("id {id:?} defined at {first} is defined again at {second}")]
    DuplicateId {
        id: String,
        first: String,
        second: String,
    },

    #[error("reference {0:?} does not resolve")]
    DanglingReference(String),

    #[error("document has no vibrational modes")]
    NoVibrations,

    #[error("mode {index} out of range ({count} modes)")]
    ModeOutOfRange { index: usize, count: usize },

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("line {line}: {message}")]
    RowParse { line: usize, message: String },

    #[error("missing or malformed field {0}")]
    MissingField(String),

    #[error("log contains no recognizable sections")]
    EmptyLog,

    #[error("cannot tell the document format: {0}")]
    UnknownFormat(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Violations carried by this error, if any. Single-site schema errors
    /// are reported as one violation.
    pub fn violations(&self) -> Vec<Violation> {
        match self {
            Error::InvariantViolation(v) => v.clone(),
            Error::SchemaViolation { path, message } => {
                vec![Violation::new(path.clone(), "schema", message.clone())]
            }
            other => vec![Violation::new("", "error", other.to_string())],
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
