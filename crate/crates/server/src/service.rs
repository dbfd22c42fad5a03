// SPDX-License-Identifier: Apache-2.0

//! Request-independent operations behind the HTTP routes.

use std::collections::HashMap;
use std::sync::Arc;

use chemdata::cjson::vibrations_to_value;
use chemdata::extchem::calculation_to_value;
use chemdata::{elements, parse_document, Document, Error as DocError, Format};
use chrono::Utc;
use serde::Serialize;
use serde_json::Value;

use crate::metadata::extract_metadata;
use crate::store::{content_id, Entry, MoleculeStore, StoreError, StoredMolecule};

pub const DEFAULT_LIMIT: usize = 25;
pub const MAX_LIMIT: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("{message}")]
    Unparseable { message: String, details: Vec<String> },
    #[error("{0}")]
    BadParameter(String),
    #[error("no molecule with id {0}")]
    NotFound(String),
    #[error("{0}")]
    NoVibrations(String),
    #[error("conversion failed: {0}")]
    Conversion(String),
    #[error(transparent)]
    Storage(#[from] StoreError),
}

impl From<DocError> for ServiceError {
    fn from(e: DocError) -> Self {
        let details = e.violations().iter().map(ToString::to_string).collect();
        ServiceError::Unparseable {
            message: e.to_string(),
            details,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ingested {
    pub id: String,
    pub created: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Query {
    pub formula: Option<String>,
    pub element: Option<String>,
    pub limit: usize,
    pub offset: usize,
}

impl Query {
    /// Reads `formula`, `element`, `limit` and `offset`; anything else is
    /// rejected so that misspelt filters do not silently match everything.
    pub fn from_params(params: &HashMap<String, String>) -> Result<Self, ServiceError> {
        let mut q = Query {
            limit: DEFAULT_LIMIT,
            ..Default::default()
        };
        for (key, value) in params {
            match key.as_str() {
                "formula" => q.formula = Some(value.clone()),
                "element" => {
                    let symbol = elements::normalize_symbol(value)
                        .ok_or_else(|| ServiceError::BadParameter(format!("unknown element {value:?}")))?;
                    q.element = Some(symbol.to_string());
                }
                "limit" => {
                    q.limit = value
                        .parse()
                        .ok()
                        .filter(|n| (1..=MAX_LIMIT).contains(n))
                        .ok_or_else(|| {
                            ServiceError::BadParameter(format!("limit must be an integer in 1..={MAX_LIMIT}"))
                        })?
                }
                "offset" => {
                    q.offset = value
                        .parse()
                        .map_err(|_| ServiceError::BadParameter("offset must be a non-negative integer".into()))?
                }
                other => return Err(ServiceError::BadParameter(format!("unknown query parameter {other:?}"))),
            }
        }
        Ok(q)
    }

    fn matches(&self, e: &Entry) -> bool {
        self.formula.as_ref().is_none_or(|f| *f == e.metadata.formula)
            && self.element.as_ref().is_none_or(|s| e.metadata.has_element(s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Page {
    pub results: Vec<Entry>,
    /// Matches before `limit`/`offset` were applied.
    pub count: usize,
}

pub struct Service {
    store: Arc<dyn MoleculeStore>,
}

impl Service {
    pub fn new(store: Arc<dyn MoleculeStore>) -> Self {
        Self { store }
    }

    /// Validates, canonicalizes and stores a document. Storing the same
    /// content twice yields the same id.
    pub fn ingest(&self, body: &str, declared: Option<Format>) -> Result<Ingested, ServiceError> {
        let doc = parse_document(body, declared)?;
        let violations = doc.validate();
        if !violations.is_empty() {
            return Err(ServiceError::Unparseable {
                message: format!("document breaks {} rule(s)", violations.len()),
                details: violations.iter().map(ToString::to_string).collect(),
            });
        }
        let canonical = doc.canonical_text()?;
        let record = StoredMolecule {
            entry: Entry {
                id: content_id(&canonical),
                source_format: doc.format(),
                created_at: Utc::now(),
                metadata: extract_metadata(&doc),
            },
            document: canonical,
        };
        let (entry, created) = self.store.insert(record)?;
        Ok(Ingested { id: entry.id, created })
    }

    /// Newest first; equal timestamps are ordered by id.
    pub fn query(&self, q: &Query) -> Page {
        let mut matches: Vec<Entry> = self.store.entries().into_iter().filter(|e| q.matches(e)).collect();
        matches.sort_by(|a, b| b.created_at.cmp(&a.created_at).then_with(|| a.id.cmp(&b.id)));
        let count = matches.len();
        let results = matches.into_iter().skip(q.offset).take(q.limit).collect();
        Page { results, count }
    }

    fn load(&self, id: &str) -> Result<(StoredMolecule, Document), ServiceError> {
        let stored = self.store.get(id)?.ok_or_else(|| ServiceError::NotFound(id.to_string()))?;
        let doc = parse_document(&stored.document, Some(stored.entry.source_format)).map_err(|e| {
            StoreError::Corrupt {
                id: id.to_string(),
                reason: e.to_string(),
            }
        })?;
        Ok((stored, doc))
    }

    /// The stored text when `format` is the source format, otherwise a
    /// conversion.
    pub fn document(&self, id: &str, format: Format) -> Result<String, ServiceError> {
        let stored = self.store.get(id)?.ok_or_else(|| ServiceError::NotFound(id.to_string()))?;
        if stored.entry.source_format == format {
            return Ok(stored.document);
        }
        let (_, doc) = self.load(id)?;
        doc.render(format).map_err(|e| ServiceError::Conversion(e.to_string()))
    }

    pub fn calculations(&self, id: &str) -> Result<Value, ServiceError> {
        let (_, doc) = self.load(id)?;
        Ok(match doc {
            Document::ExtChem(d) => Value::Array(d.calculations.iter().map(calculation_to_value).collect()),
            Document::Cjson(_) => Value::Array(Vec::new()),
        })
    }

    pub fn vibrations(&self, id: &str) -> Result<Value, ServiceError> {
        let (_, doc) = self.load(id)?;
        let cjson = doc.to_cjson().map_err(|e| ServiceError::Conversion(e.to_string()))?;
        cjson
            .vibrations
            .as_ref()
            .filter(|v| !v.frequencies.is_empty())
            .map(vibrations_to_value)
            .ok_or_else(|| ServiceError::NoVibrations(format!("molecule {id} has no vibrational data")))
    }

    pub fn delete(&self, id: &str) -> Result<(), ServiceError> {
        if self.store.remove(id)? {
            Ok(())
        } else {
            Err(ServiceError::NotFound(id.to_string()))
        }
    }
}
