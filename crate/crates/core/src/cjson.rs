// SPDX-License-Identifier: Apache-2.0

//! Chemical JSON: the array-oriented molecule format.
//!
//! Atoms are stored as parallel arrays. The cartesian position of atom `n`
//! lives in `coords3d[3n..3n + 3]`, in angstrom. Bonds are flat index pairs
//! with a parallel order array. Keys this module does not know about are kept
//! in the `extra` maps and written back out after the known keys.

use std::collections::HashSet;

use serde_json::{Map, Value};

use crate::elements;
use crate::error::{Error, Result, Violation};
use crate::json::{self, ObjectReader};

pub const VERSION_KEY: &str = "chemical json";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CjsonDocument {
    pub version: u64,
    pub name: Option<String>,
    pub atoms: AtomArrays,
    pub bonds: Option<BondArrays>,
    pub vibrations: Option<Vibrations>,
    pub extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomArrays {
    /// Flattened xyz triples, angstrom.
    pub coords3d: Vec<f64>,
    pub element_numbers: Vec<u32>,
    pub extra: Map<String, Value>,
    pub coords_extra: Map<String, Value>,
    pub elements_extra: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BondArrays {
    /// Flattened atom index pairs.
    pub connection_indices: Vec<usize>,
    pub orders: Vec<u32>,
    pub extra: Map<String, Value>,
    pub connections_extra: Map<String, Value>,
}

/// Normal modes. `eigen_vectors` is either empty (frequencies only) or holds
/// one 3N displacement vector per frequency.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Vibrations {
    /// cm-1; imaginary modes are negative.
    pub frequencies: Vec<f64>,
    pub intensities: Option<Vec<f64>>,
    pub eigen_vectors: Vec<Vec<f64>>,
    pub extra: Map<String, Value>,
}

impl CjsonDocument {
    pub fn new(element_numbers: Vec<u32>, coords3d: Vec<f64>) -> Self {
        Self {
            atoms: AtomArrays {
                coords3d,
                element_numbers,
                ..Default::default()
            },
            ..Default::default()
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.element_numbers.len()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.as_ref().map_or(0, |b| b.orders.len())
    }

    /// Position of atom `n`, or `None` when out of range.
    pub fn atom_position(&self, n: usize) -> Option<[f64; 3]> {
        let slot = self.atoms.coords3d.get(3 * n..3 * n + 3)?;
        Some([slot[0], slot[1], slot[2]])
    }

    pub fn mode_count(&self) -> usize {
        self.vibrations.as_ref().map_or(0, |v| v.frequencies.len())
    }
}

impl BondArrays {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self {
            connection_indices: pairs.iter().flat_map(|&(a, b)| [a, b]).collect(),
            orders: vec![1; pairs.len()],
            ..Default::default()
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.connection_indices.chunks_exact(2).map(|c| (c[0], c[1]))
    }
}

pub fn parse_cjson(text: &str) -> Result<CjsonDocument> {
    parse_cjson_value(serde_json::from_str(text)?)
}

/// [`parse_cjson`] for an already decoded JSON value.
pub fn parse_cjson_value(value: Value) -> Result<CjsonDocument> {
    let doc = from_value(value)?;
    let violations = validate_cjson(&doc);
    if violations.is_empty() {
        Ok(doc)
    } else {
        Err(Error::InvariantViolation(violations))
    }
}

/// Reads the typed document out of an already parsed JSON value. Only schema
/// checks are applied; see [`validate_cjson`] for the array invariants.
pub fn from_value(value: Value) -> Result<CjsonDocument> {
    let mut root = ObjectReader::new(value, "")?;
    let version = root.u64(VERSION_KEY)?;

    let mut atoms_obj = root.object("atoms")?;
    let mut coords = atoms_obj.object("coords")?;
    let p = coords.path_of("3d");
    let coords3d = json::f64_array(coords.require("3d")?, &p)?;
    let mut elements = atoms_obj.object("elements")?;
    let p = elements.path_of("number");
    let element_numbers = json::u64_array(elements.require("number")?, &p)?
        .into_iter()
        .enumerate()
        .map(|(i, z)| {
            u32::try_from(z).map_err(|_| Error::schema(json::index(&p, i), "element number too large"))
        })
        .collect::<Result<Vec<_>>>()?;
    let atoms = AtomArrays {
        coords3d,
        element_numbers,
        coords_extra: coords.finish(),
        elements_extra: elements.finish(),
        extra: atoms_obj.finish(),
    };

    let bonds = match root.opt_object("bonds")? {
        None => None,
        Some(mut b) => {
            let mut connections = b.object("connections")?;
            let p = connections.path_of("index");
            let connection_indices = json::u64_array(connections.require("index")?, &p)?
                .into_iter()
                .map(|i| i as usize)
                .collect();
            let p = b.path_of("order");
            let orders = json::u64_array(b.require("order")?, &p)?
                .into_iter()
                .enumerate()
                .map(|(i, o)| {
                    u32::try_from(o).map_err(|_| Error::schema(json::index(&p, i), "bond order too large"))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(BondArrays {
                connection_indices,
                orders,
                connections_extra: connections.finish(),
                extra: b.finish(),
            })
        }
    };

    let name = root.opt_string("name")?;

    let vibrations = match root.opt_object("vibrations")? {
        None => None,
        Some(mut v) => {
            let p = v.path_of("frequencies");
            let frequencies = json::f64_array(v.require("frequencies")?, &p)?;
            let p = v.path_of("intensities");
            let intensities = v
                .take("intensities")
                .map(|x| json::f64_array(x, &p))
                .transpose()?;
            let p = v.path_of("eigenVectors");
            let eigen_vectors = v
                .opt_array("eigenVectors")?
                .unwrap_or_default()
                .into_iter()
                .enumerate()
                .map(|(i, x)| json::f64_array(x, &json::index(&p, i)))
                .collect::<Result<Vec<_>>>()?;
            Some(Vibrations {
                frequencies,
                intensities,
                eigen_vectors,
                extra: v.finish(),
            })
        }
    };

    Ok(CjsonDocument {
        version,
        name,
        atoms,
        bonds,
        vibrations,
        extra: root.finish(),
    })
}

/// Checks every array invariant. Returns an empty list iff the document is
/// valid.
pub fn validate_cjson(doc: &CjsonDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = doc.atom_count();

    if doc.atoms.coords3d.len() != 3 * n {
        out.push(Violation::new(
            "atoms.coords.3d",
            "length-mismatch",
            format!(
                "{} coordinates for {} atoms (expected {})",
                doc.atoms.coords3d.len(),
                n,
                3 * n
            ),
        ));
    }
    if let Some(i) = doc.atoms.coords3d.iter().position(|x| !x.is_finite()) {
        out.push(Violation::new(
            format!("atoms.coords.3d[{i}]"),
            "non-finite",
            "coordinate is not a finite number",
        ));
    }
    for (i, &z) in doc.atoms.element_numbers.iter().enumerate() {
        if !elements::is_valid_number(z) {
            out.push(Violation::new(
                format!("atoms.elements.number[{i}]"),
                "element-range",
                format!("{z} is not an atomic number in 1..{}", elements::MAX_ATOMIC_NUMBER),
            ));
        }
    }

    if let Some(bonds) = &doc.bonds {
        validate_bonds(bonds, n, &mut out);
    }
    if let Some(vib) = &doc.vibrations {
        validate_vibrations(vib, n, &mut out);
    }
    out
}

fn validate_bonds(bonds: &BondArrays, atom_count: usize, out: &mut Vec<Violation>) {
    if bonds.connection_indices.len() != 2 * bonds.orders.len() {
        out.push(Violation::new(
            "bonds.order",
            "length-mismatch",
            format!(
                "{} orders for {} connection indices (expected {})",
                bonds.orders.len(),
                bonds.connection_indices.len(),
                bonds.connection_indices.len() / 2
            ),
        ));
    }
    if !bonds.connection_indices.len().is_multiple_of(2) {
        out.push(Violation::new(
            "bonds.connections.index",
            "length-mismatch",
            "odd number of connection indices",
        ));
    }
    for (i, &idx) in bonds.connection_indices.iter().enumerate() {
        if idx >= atom_count {
            out.push(Violation::new(
                format!("bonds.connections.index[{i}]"),
                "out-of-range",
                format!("atom index {idx} with {atom_count} atoms"),
            ));
        }
    }
    let mut seen = HashSet::with_capacity(bonds.orders.len());
    for (k, (a, b)) in bonds.pairs().enumerate() {
        if a == b {
            out.push(Violation::new(
                format!("bonds.connections.index[{}]", 2 * k),
                "self-bond",
                format!("atom {a} bonded to itself"),
            ));
        } else if !seen.insert((a.min(b), a.max(b))) {
            out.push(Violation::new(
                format!("bonds.connections.index[{}]", 2 * k),
                "duplicate-bond",
                format!("bond {a}-{b} listed more than once"),
            ));
        }
    }
    for (i, &o) in bonds.orders.iter().enumerate() {
        if o < 1 {
            out.push(Violation::new(
                format!("bonds.order[{i}]"),
                "bond-order",
                "bond order must be at least 1",
            ));
        }
    }
}

fn validate_vibrations(vib: &Vibrations, atom_count: usize, out: &mut Vec<Violation>) {
    let modes = vib.frequencies.len();
    if let Some(intensities) = &vib.intensities {
        if intensities.len() != modes {
            out.push(Violation::new(
                "vibrations.intensities",
                "mode-count-mismatch",
                format!("{} intensities for {modes} modes", intensities.len()),
            ));
        }
    }
    if !vib.eigen_vectors.is_empty() && vib.eigen_vectors.len() != modes {
        out.push(Violation::new(
            "vibrations.eigenVectors",
            "mode-count-mismatch",
            format!("{} eigenvectors for {modes} modes", vib.eigen_vectors.len()),
        ));
    }
    for (i, v) in vib.eigen_vectors.iter().enumerate() {
        if v.len() != 3 * atom_count {
            out.push(Violation::new(
                format!("vibrations.eigenVectors[{i}]"),
                "eigenvector-length",
                format!("length {} but 3N = {}", v.len(), 3 * atom_count),
            ));
        }
    }
}

pub fn to_value(doc: &CjsonDocument) -> Value {
    let mut root = Map::new();
    root.insert(VERSION_KEY.into(), Value::from(doc.version));

    let mut coords = Map::new();
    coords.insert("3d".into(), json::number_array(&doc.atoms.coords3d));
    extend(&mut coords, &doc.atoms.coords_extra);
    let mut elements = Map::new();
    elements.insert(
        "number".into(),
        Value::Array(doc.atoms.element_numbers.iter().map(|&z| Value::from(z)).collect()),
    );
    extend(&mut elements, &doc.atoms.elements_extra);
    let mut atoms = Map::new();
    atoms.insert("coords".into(), Value::Object(coords));
    atoms.insert("elements".into(), Value::Object(elements));
    extend(&mut atoms, &doc.atoms.extra);
    root.insert("atoms".into(), Value::Object(atoms));

    if let Some(b) = &doc.bonds {
        let mut connections = Map::new();
        connections.insert(
            "index".into(),
            Value::Array(b.connection_indices.iter().map(|&i| Value::from(i)).collect()),
        );
        extend(&mut connections, &b.connections_extra);
        let mut bonds = Map::new();
        bonds.insert("connections".into(), Value::Object(connections));
        bonds.insert(
            "order".into(),
            Value::Array(b.orders.iter().map(|&o| Value::from(o)).collect()),
        );
        extend(&mut bonds, &b.extra);
        root.insert("bonds".into(), Value::Object(bonds));
    }

    if let Some(name) = &doc.name {
        root.insert("name".into(), Value::String(name.clone()));
    }

    if let Some(v) = &doc.vibrations {
        root.insert("vibrations".into(), vibrations_to_value(v));
    }
    extend(&mut root, &doc.extra);
    Value::Object(root)
}

pub fn vibrations_to_value(v: &Vibrations) -> Value {
    let mut vib = Map::new();
    vib.insert("frequencies".into(), json::number_array(&v.frequencies));
    if let Some(i) = &v.intensities {
        vib.insert("intensities".into(), json::number_array(i));
    }
    vib.insert(
        "eigenVectors".into(),
        Value::Array(v.eigen_vectors.iter().map(|e| json::number_array(e)).collect()),
    );
    extend(&mut vib, &v.extra);
    Value::Object(vib)
}

fn extend(target: &mut Map<String, Value>, extra: &Map<String, Value>) {
    for (k, v) in extra {
        target.entry(k.clone()).or_insert_with(|| v.clone());
    }
}

/// Canonical text: known keys in fixed order, then unknown keys, two-space
/// indentation, shortest round-trip floats, trailing newline.
pub fn serialize_cjson(doc: &CjsonDocument) -> Result<String> {
    let violations = validate_cjson(doc);
    if !violations.is_empty() {
        return Err(Error::InvariantViolation(violations));
    }
    Ok(json::to_pretty(&to_value(doc)))
}

/// Coordinates displaced along one normal mode:
/// `coords3d[i] + scale * eigenVectors[mode][i]`.
pub fn displaced_coordinates(doc: &CjsonDocument, mode: usize, scale: f64) -> Result<Vec<f64>> {
    let vib = doc
        .vibrations
        .as_ref()
        .filter(|v| !v.eigen_vectors.is_empty())
        .ok_or(Error::NoVibrations)?;
    let vector = vib.eigen_vectors.get(mode).ok_or(Error::ModeOutOfRange {
        index: mode,
        count: vib.eigen_vectors.len(),
    })?;
    if vector.len() != doc.atoms.coords3d.len() {
        return Err(Error::InvariantViolation(vec![Violation::new(
            format!("vibrations.eigenVectors[{mode}]"),
            "eigenvector-length",
            format!("length {} but 3N = {}", vector.len(), doc.atoms.coords3d.len()),
        )]));
    }
    Ok(doc
        .atoms
        .coords3d
        .iter()
        .zip(vector)
        .map(|(x, d)| x + scale * d)
        .collect())
}
