// SPDX-License-Identifier: Apache-2.0

//! Either-format documents and format detection.

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::cjson::{self, CjsonDocument};
use crate::error::{Error, Result, Violation};
use crate::extchem::{self, ExtChemDocument};
use crate::ops::{cjson_to_extchem, extchem_to_cjson, hill_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Cjson,
    ExtChem,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Cjson => "cjson",
            Format::ExtChem => "extchem",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cjson" => Ok(Format::Cjson),
            "extchem" => Ok(Format::ExtChem),
            other => Err(Error::UnknownFormat(format!("unknown format name {other:?}"))),
        }
    }
}

const EXTCHEM_KEYS: [&str; 4] = ["molecules", "calculations", "molecule", "calculationType"];

/// Top-level `"chemical json"` means Chemical JSON; `molecules`,
/// `calculations` (or a single-molecule / single-calculation fragment) means
/// ExtendedChem. Both or neither is an error.
pub fn detect_format(value: &Value) -> Result<Format> {
    let Some(obj) = value.as_object() else {
        return Err(Error::UnknownFormat("top level is not an object".into()));
    };
    let is_cjson = obj.contains_key(cjson::VERSION_KEY);
    let is_extchem = EXTCHEM_KEYS.iter().any(|k| obj.contains_key(*k));
    match (is_cjson, is_extchem) {
        (true, false) => Ok(Format::Cjson),
        (false, true) => Ok(Format::ExtChem),
        (true, true) => Err(Error::UnknownFormat("keys of both formats present".into())),
        (false, false) => Err(Error::UnknownFormat("no format keys present".into())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Cjson(CjsonDocument),
    ExtChem(ExtChemDocument),
}

/// Parses JSON text as the declared format, or detects it from the keys.
pub fn parse_document(text: &str, declared: Option<Format>) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    let format = match declared {
        Some(f) => f,
        None => detect_format(&value)?,
    };
    Ok(match format {
        Format::Cjson => Document::Cjson(cjson::parse_cjson_value(value)?),
        Format::ExtChem => Document::ExtChem(extchem::parse_extchem_value(value)?),
    })
}

impl Document {
    pub fn format(&self) -> Format {
        match self {
            Document::Cjson(_) => Format::Cjson,
            Document::ExtChem(_) => Format::ExtChem,
        }
    }

    pub fn canonical_text(&self) -> Result<String> {
        match self {
            Document::Cjson(d) => cjson::serialize_cjson(d),
            Document::ExtChem(d) => extchem::serialize_extchem(d),
        }
    }

    /// All rule violations for the document's format.
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Document::Cjson(d) => cjson::validate_cjson(d),
            Document::ExtChem(d) => extchem::validate_extchem(d),
        }
    }

    pub fn to_cjson(&self) -> Result<CjsonDocument> {
        match self {
            Document::Cjson(d) => Ok(d.clone()),
            Document::ExtChem(d) => extchem_to_cjson(d, None),
        }
    }

    pub fn to_extchem(&self) -> Result<ExtChemDocument> {
        match self {
            Document::Cjson(d) => cjson_to_extchem(d),
            Document::ExtChem(d) => Ok(d.clone()),
        }
    }

    /// Converts to `format` and serializes canonically.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Cjson => cjson::serialize_cjson(&self.to_cjson()?),
            Format::ExtChem => extchem::serialize_extchem(&self.to_extchem()?),
        }
    }

    /// Element numbers of the displayed molecule (the last one for
    /// ExtendedChem documents).
    pub fn element_numbers(&self) -> Vec<u32> {
        match self {
            Document::Cjson(d) => d.atoms.element_numbers.clone(),
            Document::ExtChem(d) => d.molecules.last().map(|m| m.element_numbers()).unwrap_or_default(),
        }
    }

    pub fn formula(&self) -> Result<String> {
        hill_formula(&self.element_numbers())
    }
}
