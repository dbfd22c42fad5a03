// SPDX-License-Identifier: Apache-2.0

//! Registered units and values that carry them.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::json::{self, ObjectReader};

/// 1 bohr in angstrom (CODATA 2014).
pub const BOHR_TO_ANGSTROM: f64 = 0.52917721067;

/// The closed table of units labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Units {
    Bohr,
    Angstrom,
    AtomicUnits,
    Wavenumber,
    Debye,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Length,
    /// No conversion partner; converts only to itself.
    Opaque(Units),
}

impl Units {
    pub const ALL: [Units; 5] = [
        Units::Bohr,
        Units::Angstrom,
        Units::AtomicUnits,
        Units::Wavenumber,
        Units::Debye,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Units::Bohr => "bohr",
            Units::Angstrom => "angstrom",
            Units::AtomicUnits => "atomic units",
            Units::Wavenumber => "cm-1",
            Units::Debye => "debye",
        }
    }

    fn dimension(self) -> Dimension {
        match self {
            Units::Bohr | Units::Angstrom => Dimension::Length,
            other => Dimension::Opaque(other),
        }
    }

    /// Size of one of these units in the dimension's reference unit
    /// (angstrom for lengths).
    fn scale(self) -> f64 {
        match self {
            Units::Bohr => BOHR_TO_ANGSTROM,
            _ => 1.0,
        }
    }

    /// Multiplier taking a value in `self` to `target`.
    pub fn factor_to(self, target: Units) -> Result<f64> {
        if self == target {
            return Ok(1.0);
        }
        if self.dimension() != target.dimension() {
            return Err(Error::IncompatibleUnits {
                from: self.label().into(),
                to: target.label().into(),
            });
        }
        Ok(self.scale() / target.scale())
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Units {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Units::ALL
            .into_iter()
            .find(|u| u.label() == s)
            .ok_or_else(|| Error::UnitUnknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuantityValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl QuantityValue {
    fn map(&self, f: impl Fn(f64) -> f64) -> QuantityValue {
        match self {
            QuantityValue::Scalar(x) => QuantityValue::Scalar(f(*x)),
            QuantityValue::Vector(v) => QuantityValue::Vector(v.iter().copied().map(f).collect()),
        }
    }

    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            QuantityValue::Scalar(x) => Some(*x),
            QuantityValue::Vector(_) => None,
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        match self {
            QuantityValue::Scalar(x) => std::slice::from_ref(x),
            QuantityValue::Vector(v) => v,
        }
    }
}

/// A number or vector of numbers with an explicit units label.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub value: QuantityValue,
    pub units: Units,
}

impl Quantity {
    pub fn scalar(value: f64, units: Units) -> Self {
        Self {
            value: QuantityValue::Scalar(value),
            units,
        }
    }

    pub fn vector(value: Vec<f64>, units: Units) -> Self {
        Self {
            value: QuantityValue::Vector(value),
            units,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.as_slice().iter().all(|x| x.is_finite())
    }

    pub fn from_value(value: Value, path: &str) -> Result<Quantity> {
        let mut obj = ObjectReader::new(value, path)?;
        let vpath = obj.path_of("value");
        let value = match obj.require("value")? {
            Value::Array(items) => QuantityValue::Vector(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| json::as_f64(v, &json::index(&vpath, i)))
                    .collect::<Result<_>>()?,
            ),
            other => QuantityValue::Scalar(json::as_f64(&other, &vpath)?),
        };
        let units: Units = obj.string("units")?.parse()?;
        let rest = obj.finish();
        if let Some(key) = rest.keys().next() {
            return Err(Error::schema(
                json::child(path, key),
                "quantity objects hold only value and units",
            ));
        }
        Ok(Quantity { value, units })
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        let value = match &self.value {
            QuantityValue::Scalar(x) => json::number(*x),
            QuantityValue::Vector(v) => json::number_array(v),
        };
        map.insert("value".into(), value);
        map.insert("units".into(), Value::String(self.units.label().into()));
        Value::Object(map)
    }
}

/// Rescales a quantity into `target` units. Scalars and vectors are both
/// supported; a quantity converted to its own units is returned unchanged.
pub fn convert_quantity(q: &Quantity, target: &str) -> Result<Quantity> {
    let target: Units = target.parse()?;
    let factor = q.units.factor_to(target)?;
    if factor == 1.0 {
        return Ok(Quantity {
            value: q.value.clone(),
            units: target,
        });
    }
    Ok(Quantity {
        value: q.value.map(|x| x * factor),
        units: target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohr_to_angstrom() {
        let q = convert_quantity(&Quantity::scalar(1.0, Units::Bohr), "angstrom").unwrap();
        assert_eq!(q, Quantity::scalar(0.52917721067, Units::Angstrom));
    }

    #[test]
    fn vector_conversion() {
        let q = Quantity::vector(vec![0.0, 0.0, 0.21063604], Units::Bohr);
        let a = convert_quantity(&q, "angstrom").unwrap();
        let expected = 0.21063604 * 0.52917721067;
        assert_eq!(a.value.as_slice()[2], expected);
        assert!((a.value.as_slice()[2] - 0.1114638).abs() < 1e-7);
    }

    #[test]
    fn identity_and_errors() {
        for u in Units::ALL {
            let q = Quantity::scalar(18.596483, u);
            assert_eq!(convert_quantity(&q, u.label()).unwrap(), q);
        }
        let q = Quantity::scalar(1.0, Units::AtomicUnits);
        assert!(matches!(
            convert_quantity(&q, "bohr"),
            Err(Error::IncompatibleUnits { .. })
        ));
        assert!(matches!(
            convert_quantity(&q, "parsec"),
            Err(Error::UnitUnknown(_))
        ));
        assert!(matches!(
            convert_quantity(&Quantity::scalar(1.0, Units::Debye), "atomic units"),
            Err(Error::IncompatibleUnits { .. })
        ));
    }

    #[test]
    fn parse_quantity_objects() {
        let v: Value = serde_json::from_str(r#"{"units":"atomic units","value":0.8052087008}"#).unwrap();
        let q = Quantity::from_value(v, "q").unwrap();
        assert_eq!(q, Quantity::scalar(0.8052087008, Units::AtomicUnits));
        let v: Value = serde_json::from_str(r#"{"units":"furlong","value":1}"#).unwrap();
        assert!(matches!(Quantity::from_value(v, "q"), Err(Error::UnitUnknown(_))));
        let v: Value = serde_json::from_str(r#"{"units":"bohr","value":"1"}"#).unwrap();
        assert!(matches!(Quantity::from_value(v, "q"), Err(Error::SchemaViolation { .. })));
    }
}
