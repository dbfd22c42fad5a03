// SPDX-License-Identifier: Apache-2.0

//! Deciding what a file holds and loading it.

use std::path::Path;

use chemdata::{detect_format, parse_document, parse_log, Document, Format};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Cjson,
    ExtChem,
    /// JSON whose format is decided by its top-level keys.
    Json,
    Log,
}

impl InputKind {
    /// `.cjson`, `.json`, `.out` and `.log` decide by name; anything else is
    /// sniffed: text that opens with `{` is a JSON document, the rest is a log.
    pub fn of(path: &Path, text: &str) -> InputKind {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("cjson") => InputKind::Cjson,
            Some("json") => InputKind::Json,
            Some("out" | "log") => InputKind::Log,
            _ => sniff(text),
        }
    }

    pub fn declared_format(self) -> Option<Format> {
        match self {
            InputKind::Cjson => Some(Format::Cjson),
            InputKind::ExtChem => Some(Format::ExtChem),
            InputKind::Json | InputKind::Log => None,
        }
    }
}

fn sniff(text: &str) -> InputKind {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => match detect_format(&v) {
            Ok(Format::Cjson) => InputKind::Cjson,
            Ok(Format::ExtChem) => InputKind::ExtChem,
            Err(_) => InputKind::Json,
        },
        Err(_) if text.trim_start().starts_with('{') => InputKind::Json,
        Err(_) => InputKind::Log,
    }
}

/// Parses `text` as `kind`; logs become ExtendedChem documents.
pub fn load(kind: InputKind, text: &str) -> chemdata::Result<Document> {
    match kind {
        InputKind::Log => parse_log(text).map(Document::ExtChem),
        other => parse_document(text, other.declared_format()),
    }
}
