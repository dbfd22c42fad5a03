// SPDX-License-Identifier: Apache-2.0

//! ExtendedChem JSON: the object-oriented format.
//!
//! Every atom, molecule, basis set, calculation and calculation setup is an
//! object with a string `id`. Other objects point at them by writing the id
//! string into a field (`"molecule": "Molecule.2"`); see [`crate::ids`] for
//! resolution. All numeric leaves are [`Quantity`] objects with units.
//!
//! A document is an envelope `{"molecules": [...], "basisSets": [...],
//! "calculations": [...]}`. Two fragment shapes are also read: a single
//! `{"molecule": {...}}` block and a bare calculation object.

use std::fmt;

use serde_json::{Map, Value};

use crate::elements;
use crate::error::{Error, Result, Violation};
use crate::ids;
use crate::json::{self, ObjectReader};
use crate::units::{Quantity, Units};

/// A string naming another object's id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdRef(pub String);

impl IdRef {
    pub fn new(id: impl Into<String>) -> Self {
        IdRef(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for IdRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for IdRef {
    fn from(s: &str) -> Self {
        IdRef(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExtChemDocument {
    pub molecules: Vec<Molecule>,
    pub basis_sets: Vec<BasisSet>,
    pub calculations: Vec<Calculation>,
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Molecule {
    pub id: String,
    pub atoms: Vec<AtomObject>,
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomObject {
    pub id: String,
    pub element_label: Option<String>,
    pub element_symbol: String,
    pub element_number: u32,
    pub element_name: Option<String>,
    /// Vector of three coordinates.
    pub cartesian_coordinates: Quantity,
    pub extra: Map<String, Value>,
}

/// Basis set contents are not modelled; only the id is interpreted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BasisSet {
    pub id: String,
    pub body: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calculation {
    pub calculation_type: String,
    pub molecular_formula: String,
    pub id: String,
    pub setup: SetupEntry,
    pub results: Option<CalculationResults>,
    pub extra: Map<String, Value>,
}

/// A setup is either written out or points at one defined earlier.
#[derive(Debug, Clone, PartialEq)]
pub enum SetupEntry {
    Inline(CalculationSetup),
    Reference(IdRef),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalculationSetup {
    pub id: String,
    pub molecule: IdRef,
    pub charge: i64,
    pub multiplicity: u32,
    pub number_of_electrons: u64,
    pub wave_function_type: Option<String>,
    pub wave_function_theory: Option<String>,
    pub basis_set: Option<IdRef>,
    pub input_vectors: Option<String>,
    pub output_vectors: Option<String>,
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CalculationResults {
    pub molecular_properties: Vec<PropertyRecord>,
    /// cm-1, one scalar per mode.
    pub vibrational_frequencies: Option<Vec<Quantity>>,
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PropertyTarget {
    Molecule(IdRef),
    Atom(IdRef),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PropertyValue {
    Quantity(Quantity),
    /// Named components, e.g. `quadrupoleMoment.momentXZ`.
    Group(Vec<(String, Quantity)>),
}

/// One entry of `molecularProperties`: named quantities scoped to a molecule
/// or to one atom.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PropertyRecord {
    pub target: Option<PropertyTarget>,
    pub properties: Vec<(String, PropertyValue)>,
}

impl PropertyRecord {
    pub fn get(&self, name: &str) -> Option<&PropertyValue> {
        self.properties.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    /// Looks up `name` directly or `group.component`.
    pub fn quantity(&self, name: &str, component: Option<&str>) -> Option<&Quantity> {
        match (self.get(name)?, component) {
            (PropertyValue::Quantity(q), None) => Some(q),
            (PropertyValue::Group(items), Some(c)) => {
                items.iter().find(|(k, _)| k == c).map(|(_, q)| q)
            }
            _ => None,
        }
    }

    pub fn dipole_total(&self) -> Option<&Quantity> {
        self.quantity("dipoleMoment", Some("totalMoment"))
    }
}

impl Molecule {
    pub fn element_numbers(&self) -> Vec<u32> {
        self.atoms.iter().map(|a| a.element_number).collect()
    }
}

impl Calculation {
    pub fn inline_setup(&self) -> Option<&CalculationSetup> {
        match &self.setup {
            SetupEntry::Inline(s) => Some(s),
            SetupEntry::Reference(_) => None,
        }
    }
}

impl ExtChemDocument {
    pub fn molecule(&self, id: &str) -> Option<&Molecule> {
        self.molecules.iter().find(|m| m.id == id)
    }

    /// Total dipole moment from the first property record that carries one.
    pub fn first_dipole_total(&self) -> Option<&Quantity> {
        self.calculations
            .iter()
            .filter_map(|c| c.results.as_ref())
            .flat_map(|r| &r.molecular_properties)
            .find_map(PropertyRecord::dipole_total)
    }
}

// ---------------------------------------------------------------------------
// parsing

pub fn parse_extchem(text: &str) -> Result<ExtChemDocument> {
    parse_extchem_value(serde_json::from_str(text)?)
}

/// [`parse_extchem`] for an already decoded JSON value.
pub fn parse_extchem_value(value: Value) -> Result<ExtChemDocument> {
    let doc = from_value(value)?;
    if let Some(v) = schema_violations(&doc).into_iter().next() {
        return Err(Error::SchemaViolation {
            path: v.path,
            message: v.message,
        });
    }
    Ok(doc)
}

pub fn from_value(value: Value) -> Result<ExtChemDocument> {
    let mut root = ObjectReader::new(value, "")?;
    let is_envelope =
        root.contains("molecules") || root.contains("calculations") || root.contains("basisSets");

    if !is_envelope && root.contains("calculationType") {
        let calc = parse_calculation(root.finish().into(), "calculations[0]")?;
        return Ok(ExtChemDocument {
            calculations: vec![calc],
            ..Default::default()
        });
    }

    let mut doc = ExtChemDocument::default();
    if !is_envelope {
        let path = root.path_of("molecule");
        let m = root.require("molecule")?;
        doc.molecules.push(parse_molecule(m, &path)?);
        doc.extra = root.finish();
        return Ok(doc);
    }

    let path = root.path_of("molecules");
    for (i, m) in root.opt_array("molecules")?.unwrap_or_default().into_iter().enumerate() {
        doc.molecules.push(parse_molecule(m, &json::index(&path, i))?);
    }
    let path = root.path_of("basisSets");
    for (i, b) in root.opt_array("basisSets")?.unwrap_or_default().into_iter().enumerate() {
        let mut obj = ObjectReader::new(b, json::index(&path, i))?;
        let id = obj.string("id")?;
        doc.basis_sets.push(BasisSet {
            id,
            body: obj.finish(),
        });
    }
    let path = root.path_of("calculations");
    for (i, c) in root.opt_array("calculations")?.unwrap_or_default().into_iter().enumerate() {
        doc.calculations.push(parse_calculation(c, &json::index(&path, i))?);
    }
    doc.extra = root.finish();
    Ok(doc)
}

fn parse_molecule(value: Value, path: &str) -> Result<Molecule> {
    let mut obj = ObjectReader::new(value, path)?;
    let id = obj.string("id")?;
    let apath = obj.path_of("atoms");
    let atoms = obj
        .opt_array("atoms")?
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(i, a)| parse_atom(a, &json::index(&apath, i)))
        .collect::<Result<_>>()?;
    Ok(Molecule {
        id,
        atoms,
        extra: obj.finish(),
    })
}

fn parse_atom(value: Value, path: &str) -> Result<AtomObject> {
    let mut obj = ObjectReader::new(value, path)?;
    let id = obj.string("id")?;
    let element_label = obj.opt_string("elementLabel")?;
    let element_symbol = obj.string("elementSymbol")?;
    let npath = obj.path_of("elementNumber");
    let element_number = u32::try_from(obj.u64("elementNumber")?)
        .map_err(|_| Error::schema(npath, "element number too large"))?;
    let element_name = obj.opt_string("elementName")?;
    let cpath = obj.path_of("cartesianCoordinates");
    let cartesian_coordinates = Quantity::from_value(obj.require("cartesianCoordinates")?, &cpath)?;
    Ok(AtomObject {
        id,
        element_label,
        element_symbol,
        element_number,
        element_name,
        cartesian_coordinates,
        extra: obj.finish(),
    })
}

fn parse_calculation(value: Value, path: &str) -> Result<Calculation> {
    let mut obj = ObjectReader::new(value, path)?;
    let calculation_type = obj.string("calculationType")?;
    let molecular_formula = obj.string("molecularFormula")?;
    let id = obj.string("id")?;
    let spath = obj.path_of("calculationSetup");
    let setup = match obj.require("calculationSetup")? {
        Value::String(r) => SetupEntry::Reference(IdRef(r)),
        other => SetupEntry::Inline(parse_setup(other, &spath)?),
    };
    let rpath = obj.path_of("calculationResults");
    let results = obj
        .take("calculationResults")
        .map(|r| parse_results(r, &rpath))
        .transpose()?;
    Ok(Calculation {
        calculation_type,
        molecular_formula,
        id,
        setup,
        results,
        extra: obj.finish(),
    })
}

fn parse_setup(value: Value, path: &str) -> Result<CalculationSetup> {
    let mut obj = ObjectReader::new(value, path)?;
    let id = obj.string("id")?;
    let molecule = IdRef(obj.string("molecule")?);
    let charge = obj.i64("charge")?;
    let mpath = obj.path_of("molecularSpinMultiplicity");
    let multiplicity = u32::try_from(obj.u64("molecularSpinMultiplicity")?)
        .map_err(|_| Error::schema(mpath, "multiplicity too large"))?;
    let number_of_electrons = obj.u64("numberOfElectrons")?;
    Ok(CalculationSetup {
        id,
        molecule,
        charge,
        multiplicity,
        number_of_electrons,
        wave_function_type: obj.opt_string("waveFunctionType")?,
        wave_function_theory: obj.opt_string("waveFunctionTheory")?,
        basis_set: obj.opt_string("basisSet")?.map(IdRef),
        input_vectors: obj.opt_string("inputVectors")?,
        output_vectors: obj.opt_string("outputVectors")?,
        extra: obj.finish(),
    })
}

fn parse_results(value: Value, path: &str) -> Result<CalculationResults> {
    let mut obj = ObjectReader::new(value, path)?;
    let ppath = obj.path_of("molecularProperties");
    let molecular_properties = obj
        .opt_array("molecularProperties")?
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(i, r)| parse_property_record(r, &json::index(&ppath, i)))
        .collect::<Result<_>>()?;
    let fpath = obj.path_of("vibrationalFrequencies");
    let vibrational_frequencies = obj
        .opt_array("vibrationalFrequencies")?
        .map(|items| {
            items
                .into_iter()
                .enumerate()
                .map(|(i, q)| Quantity::from_value(q, &json::index(&fpath, i)))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(CalculationResults {
        molecular_properties,
        vibrational_frequencies,
        extra: obj.finish(),
    })
}

fn parse_property_record(value: Value, path: &str) -> Result<PropertyRecord> {
    let obj = ObjectReader::new(value, path)?;
    let mut record = PropertyRecord::default();
    for (key, value) in obj.finish() {
        let kpath = json::child(path, &key);
        let target = match key.as_str() {
            "molecule" | "Molecule" => Some(PropertyTarget::Molecule(IdRef(json::as_string(value.clone(), &kpath)?))),
            "atom" => Some(PropertyTarget::Atom(IdRef(json::as_string(value.clone(), &kpath)?))),
            _ => None,
        };
        if let Some(target) = target {
            if record.target.is_some() {
                return Err(Error::schema(kpath, "record has more than one target"));
            }
            record.target = Some(target);
            continue;
        }
        let property = match value {
            Value::Object(map) if map.contains_key("units") => {
                PropertyValue::Quantity(Quantity::from_value(Value::Object(map), &kpath)?)
            }
            Value::Object(map) => PropertyValue::Group(
                map.into_iter()
                    .map(|(name, q)| {
                        let qpath = json::child(&kpath, &name);
                        Ok((name, Quantity::from_value(q, &qpath)?))
                    })
                    .collect::<Result<_>>()?,
            ),
            other => {
                return Err(Error::schema(
                    kpath,
                    format!("property values must be quantities, found {}", json::kind(&other)),
                ))
            }
        };
        record.properties.push((key, property));
    }
    Ok(record)
}

// ---------------------------------------------------------------------------
// checks

/// Per-object rules that do not need reference resolution: element
/// consistency, coordinate shape, finite values, multiplicity.
pub fn schema_violations(doc: &ExtChemDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, m) in doc.molecules.iter().enumerate() {
        let mpath = format!("molecules[{i}]");
        if m.id.is_empty() {
            out.push(Violation::new(format!("{mpath}.id"), "empty-id", "molecule id is empty"));
        }
        for (j, a) in m.atoms.iter().enumerate() {
            check_atom(a, &format!("{mpath}.atoms[{j}]"), &mut out);
        }
    }
    for (i, c) in doc.calculations.iter().enumerate() {
        let cpath = format!("calculations[{i}]");
        if let SetupEntry::Inline(s) = &c.setup {
            if s.multiplicity < 1 {
                out.push(Violation::new(
                    format!("{cpath}.calculationSetup.molecularSpinMultiplicity"),
                    "multiplicity",
                    "spin multiplicity must be at least 1",
                ));
            }
        }
        if let Some(r) = &c.results {
            let rpath = format!("{cpath}.calculationResults");
            for (k, rec) in r.molecular_properties.iter().enumerate() {
                for (name, value) in &rec.properties {
                    let ppath = format!("{rpath}.molecularProperties[{k}].{name}");
                    let finite = match value {
                        PropertyValue::Quantity(q) => q.is_finite(),
                        PropertyValue::Group(items) => items.iter().all(|(_, q)| q.is_finite()),
                    };
                    if !finite {
                        out.push(Violation::new(ppath, "non-finite", "value is not finite"));
                    }
                }
            }
            for (k, f) in r.vibrational_frequencies.iter().flatten().enumerate() {
                if f.value.as_scalar().is_none() || !f.is_finite() {
                    out.push(Violation::new(
                        format!("{rpath}.vibrationalFrequencies[{k}]"),
                        "frequency",
                        "frequency must be a finite scalar",
                    ));
                }
            }
        }
    }
    out
}

fn check_atom(a: &AtomObject, path: &str, out: &mut Vec<Violation>) {
    match elements::symbol(a.element_number) {
        None => out.push(Violation::new(
            format!("{path}.elementNumber"),
            "element-range",
            format!("{} is not an atomic number", a.element_number),
        )),
        Some(sym) => {
            if sym != a.element_symbol {
                out.push(Violation::new(
                    format!("{path}.elementSymbol"),
                    "element-mismatch",
                    format!(
                        "symbol {:?} does not match element number {} ({sym})",
                        a.element_symbol, a.element_number
                    ),
                ));
            }
            if let Some(label) = &a.element_label {
                if !label.eq_ignore_ascii_case(sym) {
                    out.push(Violation::new(
                        format!("{path}.elementLabel"),
                        "element-mismatch",
                        format!("label {label:?} does not match symbol {sym}"),
                    ));
                }
            }
        }
    }
    let coords = &a.cartesian_coordinates;
    if !matches!(&coords.value, crate::units::QuantityValue::Vector(v) if v.len() == 3) {
        out.push(Violation::new(
            format!("{path}.cartesianCoordinates.value"),
            "coordinate-shape",
            "cartesian coordinates must be a vector of 3 numbers",
        ));
    }
    if !coords.is_finite() {
        out.push(Violation::new(
            format!("{path}.cartesianCoordinates.value"),
            "non-finite",
            "coordinate is not finite",
        ));
    }
}

/// Every rule: schema, unique ids, reference integrity, electron counts.
pub fn validate_extchem(doc: &ExtChemDocument) -> Vec<Violation> {
    let mut out = schema_violations(doc);
    let (index, duplicates) = ids::index_with_duplicates(doc);
    out.extend(duplicates.into_iter().map(|d| {
        Violation::new(
            d.second,
            "duplicate-id",
            format!("id {:?} already defined at {}", d.id, d.first),
        )
    }));
    out.extend(ids::reference_violations(doc, &index));

    for (i, c) in doc.calculations.iter().enumerate() {
        let Some(setup) = c.inline_setup() else { continue };
        let Some(ids::IdTarget::Molecule(m)) = index.get(setup.molecule.as_str()).map(|e| e.target)
        else {
            continue;
        };
        let expected = m.atoms.iter().map(|a| a.element_number as i64).sum::<i64>() - setup.charge;
        if expected != setup.number_of_electrons as i64 {
            out.push(Violation::new(
                format!("calculations[{i}].calculationSetup.numberOfElectrons"),
                "electron-count",
                format!(
                    "{} electrons but {} has {expected} after charge {}",
                    setup.number_of_electrons, m.id, setup.charge
                ),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// emission

pub fn to_value(doc: &ExtChemDocument) -> Value {
    let mut root = Map::new();
    root.insert(
        "molecules".into(),
        Value::Array(doc.molecules.iter().map(molecule_to_value).collect()),
    );
    if !doc.basis_sets.is_empty() {
        root.insert(
            "basisSets".into(),
            Value::Array(
                doc.basis_sets
                    .iter()
                    .map(|b| {
                        let mut m = Map::new();
                        m.insert("id".into(), b.id.clone().into());
                        extend(&mut m, &b.body);
                        Value::Object(m)
                    })
                    .collect(),
            ),
        );
    }
    root.insert(
        "calculations".into(),
        Value::Array(doc.calculations.iter().map(calculation_to_value).collect()),
    );
    extend(&mut root, &doc.extra);
    Value::Object(root)
}

fn molecule_to_value(m: &Molecule) -> Value {
    let mut obj = Map::new();
    obj.insert("id".into(), m.id.clone().into());
    obj.insert(
        "atoms".into(),
        Value::Array(m.atoms.iter().map(atom_to_value).collect()),
    );
    extend(&mut obj, &m.extra);
    Value::Object(obj)
}

fn atom_to_value(a: &AtomObject) -> Value {
    let mut obj = Map::new();
    obj.insert("id".into(), a.id.clone().into());
    if let Some(l) = &a.element_label {
        obj.insert("elementLabel".into(), l.clone().into());
    }
    obj.insert("elementSymbol".into(), a.element_symbol.clone().into());
    obj.insert("elementNumber".into(), a.element_number.into());
    if let Some(n) = &a.element_name {
        obj.insert("elementName".into(), n.clone().into());
    }
    obj.insert("cartesianCoordinates".into(), a.cartesian_coordinates.to_value());
    extend(&mut obj, &a.extra);
    Value::Object(obj)
}

pub fn calculation_to_value(c: &Calculation) -> Value {
    let mut obj = Map::new();
    obj.insert("calculationType".into(), c.calculation_type.clone().into());
    obj.insert("molecularFormula".into(), c.molecular_formula.clone().into());
    obj.insert("id".into(), c.id.clone().into());
    let setup = match &c.setup {
        SetupEntry::Reference(r) => Value::String(r.0.clone()),
        SetupEntry::Inline(s) => setup_to_value(s),
    };
    obj.insert("calculationSetup".into(), setup);
    if let Some(r) = &c.results {
        obj.insert("calculationResults".into(), results_to_value(r));
    }
    extend(&mut obj, &c.extra);
    Value::Object(obj)
}

fn setup_to_value(s: &CalculationSetup) -> Value {
    let mut obj = Map::new();
    obj.insert("id".into(), s.id.clone().into());
    obj.insert("molecule".into(), s.molecule.0.clone().into());
    obj.insert("charge".into(), s.charge.into());
    obj.insert("molecularSpinMultiplicity".into(), s.multiplicity.into());
    obj.insert("numberOfElectrons".into(), s.number_of_electrons.into());
    let optional = [
        ("waveFunctionType", s.wave_function_type.as_ref()),
        ("waveFunctionTheory", s.wave_function_theory.as_ref()),
        ("basisSet", s.basis_set.as_ref().map(|r| &r.0)),
        ("inputVectors", s.input_vectors.as_ref()),
        ("outputVectors", s.output_vectors.as_ref()),
    ];
    for (key, value) in optional {
        if let Some(v) = value {
            obj.insert(key.into(), v.clone().into());
        }
    }
    extend(&mut obj, &s.extra);
    Value::Object(obj)
}

fn results_to_value(r: &CalculationResults) -> Value {
    let mut obj = Map::new();
    let records = r
        .molecular_properties
        .iter()
        .map(|rec| {
            let mut m = Map::new();
            match &rec.target {
                Some(PropertyTarget::Molecule(id)) => {
                    m.insert("molecule".into(), id.0.clone().into());
                }
                Some(PropertyTarget::Atom(id)) => {
                    m.insert("atom".into(), id.0.clone().into());
                }
                None => {}
            }
            for (name, value) in &rec.properties {
                let v = match value {
                    PropertyValue::Quantity(q) => q.to_value(),
                    PropertyValue::Group(items) => Value::Object(
                        items.iter().map(|(k, q)| (k.clone(), q.to_value())).collect(),
                    ),
                };
                m.insert(name.clone(), v);
            }
            Value::Object(m)
        })
        .collect();
    obj.insert("molecularProperties".into(), Value::Array(records));
    if let Some(freqs) = &r.vibrational_frequencies {
        obj.insert(
            "vibrationalFrequencies".into(),
            Value::Array(freqs.iter().map(Quantity::to_value).collect()),
        );
    }
    extend(&mut obj, &r.extra);
    Value::Object(obj)
}

fn extend(target: &mut Map<String, Value>, extra: &Map<String, Value>) {
    for (k, v) in extra {
        target.entry(k.clone()).or_insert_with(|| v.clone());
    }
}

/// Canonical text in envelope form. Fails on documents that would not parse
/// back (schema violations); dangling references are allowed through.
pub fn serialize_extchem(doc: &ExtChemDocument) -> Result<String> {
    let violations = schema_violations(doc);
    if !violations.is_empty() {
        return Err(Error::InvariantViolation(violations));
    }
    Ok(json::to_pretty(&to_value(doc)))
}

/// Builds an atom object with symbol, label and name filled in from the
/// periodic table.
pub fn atom_from_element(id: String, element_number: u32, coordinates: Quantity) -> Result<AtomObject> {
    let symbol = elements::symbol(element_number)
        .ok_or_else(|| Error::UnknownElement(element_number.to_string()))?;
    Ok(AtomObject {
        id,
        element_label: Some(symbol.to_ascii_lowercase()),
        element_symbol: symbol.to_string(),
        element_number,
        element_name: elements::name(element_number).map(str::to_string),
        cartesian_coordinates: coordinates,
        extra: Map::new(),
    })
}

/// Unit-checked coordinates of an atom in the requested length units.
pub fn atom_coordinates(atom: &AtomObject, units: Units) -> Result<[f64; 3]> {
    let q = crate::units::convert_quantity(&atom.cartesian_coordinates, units.label())?;
    match q.value.as_slice() {
        [x, y, z] => Ok([*x, *y, *z]),
        _ => Err(Error::schema(
            format!("atom {}.cartesianCoordinates", atom.id),
            "expected three coordinates",
        )),
    }
}
