// SPDX-License-Identifier: Apache-2.0

//! Path-tracking helpers for walking `serde_json` values into typed records.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub(crate) fn child(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub(crate) fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub(crate) fn kind(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// An object being consumed key by key. Whatever is left at the end are the
/// unknown keys, kept for round-tripping.
pub(crate) struct ObjectReader {
    pub path: String,
    map: Map<String, Value>,
}

impl ObjectReader {
    pub fn new(value: Value, path: impl Into<String>) -> Result<Self> {
        let path = path.into();
        match value {
            Value::Object(map) => Ok(Self { path, map }),
            other => Err(Error::schema(
                path,
                format!("expected object, found {}", kind(&other)),
            )),
        }
    }

    pub fn path_of(&self, key: &str) -> String {
        child(&self.path, key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn take(&mut self, key: &str) -> Option<Value> {
        self.map.shift_remove(key)
    }

    pub fn require(&mut self, key: &str) -> Result<Value> {
        self.take(key)
            .ok_or_else(|| Error::schema(self.path_of(key), "required key missing"))
    }

    pub fn object(&mut self, key: &str) -> Result<ObjectReader> {
        let path = self.path_of(key);
        ObjectReader::new(self.require(key)?, path)
    }

    pub fn opt_object(&mut self, key: &str) -> Result<Option<ObjectReader>> {
        let path = self.path_of(key);
        self.take(key).map(|v| ObjectReader::new(v, path)).transpose()
    }

    pub fn string(&mut self, key: &str) -> Result<String> {
        let path = self.path_of(key);
        as_string(self.require(key)?, &path)
    }

    pub fn opt_string(&mut self, key: &str) -> Result<Option<String>> {
        let path = self.path_of(key);
        self.take(key).map(|v| as_string(v, &path)).transpose()
    }

    pub fn u64(&mut self, key: &str) -> Result<u64> {
        let path = self.path_of(key);
        as_u64(&self.require(key)?, &path)
    }

    pub fn i64(&mut self, key: &str) -> Result<i64> {
        let path = self.path_of(key);
        as_i64(&self.require(key)?, &path)
    }

    pub fn opt_array(&mut self, key: &str) -> Result<Option<Vec<Value>>> {
        let path = self.path_of(key);
        self.take(key).map(|v| as_array(v, &path)).transpose()
    }

    /// Keys not consumed so far, in their original order.
    pub fn finish(self) -> Map<String, Value> {
        self.map
    }
}

pub(crate) fn as_string(value: Value, path: &str) -> Result<String> {
    match value {
        Value::String(s) => Ok(s),
        other => Err(Error::schema(
            path,
            format!("expected string, found {}", kind(&other)),
        )),
    }
}

pub(crate) fn as_array(value: Value, path: &str) -> Result<Vec<Value>> {
    match value {
        Value::Array(a) => Ok(a),
        other => Err(Error::schema(
            path,
            format!("expected array, found {}", kind(&other)),
        )),
    }
}

pub(crate) fn as_f64(value: &Value, path: &str) -> Result<f64> {
    value
        .as_f64()
        .ok_or_else(|| Error::schema(path, format!("expected number, found {}", kind(value))))
}

pub(crate) fn as_u64(value: &Value, path: &str) -> Result<u64> {
    value.as_u64().ok_or_else(|| {
        Error::schema(
            path,
            format!("expected non-negative integer, found {value}"),
        )
    })
}

pub(crate) fn as_i64(value: &Value, path: &str) -> Result<i64> {
    value
        .as_i64()
        .ok_or_else(|| Error::schema(path, format!("expected integer, found {value}")))
}

pub(crate) fn f64_array(value: Value, path: &str) -> Result<Vec<f64>> {
    as_array(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| as_f64(v, &index(path, i)))
        .collect()
}

pub(crate) fn u64_array(value: Value, path: &str) -> Result<Vec<u64>> {
    as_array(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| as_u64(v, &index(path, i)))
        .collect()
}

/// JSON number for a float. Integral values keep a fractional part so the
/// emitted text re-parses as a float.
pub(crate) fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub(crate) fn number_array(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(number).collect())
}

pub(crate) fn to_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("value serializes");
    text.push('\n');
    text
}
