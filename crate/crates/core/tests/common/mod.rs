// SPDX-License-Identifier: Apache-2.0

//! Seeded document generators and brute-force oracles shared by the
//! integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use chemdata::elements;
use chemdata::extchem::{BasisSet, CalculationResults};
use chemdata::{
    hill_formula, AtomArrays, AtomObject, BondArrays, Calculation, CalculationSetup, CjsonDocument,
    ExtChemDocument, IdRef, Molecule, PropertyRecord, PropertyTarget, PropertyValue, Quantity,
    SetupEntry, Units, Vibrations,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(rel: &str) -> PathBuf {
    // resolved through ../core so other crates can include this module
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(rel)
}

pub fn fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Mostly ordinary magnitudes, with zeros, tiny and large values mixed in
/// to exercise float formatting.
pub fn float(rng: &mut impl Rng) -> f64 {
    match rng.random_range(0..12) {
        0 => 0.0,
        1 => rng.random_range(-1e-9..1e-9),
        2 => rng.random_range(-1e7..1e7),
        3 => rng.random_range(-100..100) as f64,
        _ => rng.random_range(-25.0..25.0),
    }
}

fn extras(rng: &mut impl Rng) -> Map<String, Value> {
    let mut m = Map::new();
    if rng.random_bool(0.2) {
        m.insert("x-note".into(), json!({"tag": rng.random_range(0..1000), "list": [1, "two", null]}));
    }
    m
}

pub fn random_cjson(rng: &mut impl Rng, max_atoms: usize, max_bonds: usize) -> CjsonDocument {
    let n = rng.random_range(1..=max_atoms);
    let element_numbers: Vec<u32> = (0..n).map(|_| rng.random_range(1..=118)).collect();
    let coords3d: Vec<f64> = (0..3 * n).map(|_| float(rng)).collect();

    let bonds = if n > 1 && rng.random_bool(0.8) {
        let wanted = rng.random_range(0..=max_bonds);
        let mut seen = std::collections::HashSet::new();
        let mut b = BondArrays::default();
        for _ in 0..wanted {
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            if i != j && seen.insert((i.min(j), i.max(j))) {
                b.connection_indices.extend([i, j]);
                b.orders.push(rng.random_range(1..=3));
            }
        }
        Some(b)
    } else {
        None
    };

    let vibrations = rng.random_bool(0.3).then(|| {
        let modes = rng.random_range(0..4);
        let full = rng.random_bool(0.7);
        Vibrations {
            frequencies: (0..modes).map(|_| rng.random_range(-500.0..4000.0)).collect(),
            intensities: rng
                .random_bool(0.5)
                .then(|| (0..modes).map(|_| rng.random_range(0.0..100.0)).collect()),
            eigen_vectors: if full {
                (0..modes).map(|_| (0..3 * n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
            } else {
                Vec::new()
            },
            extra: extras(rng),
        }
    });

    CjsonDocument {
        version: 0,
        name: rng.random_bool(0.5).then(|| format!("mol-{}", rng.random_range(0..10_000))),
        atoms: AtomArrays {
            coords3d,
            element_numbers,
            extra: extras(rng),
            ..Default::default()
        },
        bonds,
        vibrations,
        extra: extras(rng),
    }
}

/// Atoms packed at roughly liquid density so that bond perception has work
/// to do.
pub fn packed_atoms(rng: &mut impl Rng, n: usize) -> (Vec<u32>, Vec<f64>) {
    const COMMON: [u32; 6] = [1, 1, 6, 7, 8, 16];
    let side = 1.6 * (n as f64).cbrt();
    let numbers = (0..n).map(|_| COMMON[rng.random_range(0..COMMON.len())]).collect();
    let coords = (0..3 * n).map(|_| rng.random_range(0.0..side)).collect();
    (numbers, coords)
}

/// O(N^2) reference for bond perception.
pub fn brute_force_bonds(numbers: &[u32], coords: &[f64], tolerance: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..numbers.len() {
        for j in i + 1..numbers.len() {
            let d = (0..3)
                .map(|k| (coords[3 * i + k] - coords[3 * j + k]).powi(2))
                .sum::<f64>()
                .sqrt();
            let ri = elements::covalent_radius(numbers[i]).unwrap();
            let rj = elements::covalent_radius(numbers[j]).unwrap();
            if d <= tolerance * (ri + rj) {
                out.push((i, j));
            }
        }
    }
    out
}

fn random_atom(rng: &mut impl Rng, id: String) -> AtomObject {
    let z = rng.random_range(1..=36);
    let symbol = elements::symbol(z).unwrap();
    AtomObject {
        id,
        element_label: rng.random_bool(0.8).then(|| symbol.to_ascii_lowercase()),
        element_symbol: symbol.to_string(),
        element_number: z,
        element_name: rng.random_bool(0.8).then(|| elements::name(z).unwrap().to_string()),
        cartesian_coordinates: Quantity::vector(
            (0..3).map(|_| float(rng)).collect(),
            if rng.random_bool(0.5) { Units::Bohr } else { Units::Angstrom },
        ),
        extra: extras(rng),
    }
}

fn au(rng: &mut impl Rng) -> Quantity {
    Quantity::scalar(float(rng), Units::AtomicUnits)
}

/// A fully linked document: every reference points at an earlier
/// definition of the right kind, and electron counts are consistent.
pub fn random_extchem(rng: &mut impl Rng, min_calculations: usize) -> ExtChemDocument {
    let mut doc = ExtChemDocument::default();
    for m in 1..=rng.random_range(1..=3) {
        let atoms = (1..=rng.random_range(1..=8))
            .map(|k| random_atom(rng, format!("Atom.{k}.Mol.{m}")))
            .collect();
        doc.molecules.push(Molecule {
            id: format!("Molecule.{m}"),
            atoms,
            extra: extras(rng),
        });
    }
    for b in 1..=rng.random_range(0..=2) {
        let mut body = Map::new();
        if rng.random_bool(0.5) {
            body.insert("name".into(), "6-31G*".into());
        }
        doc.basis_sets.push(BasisSet {
            id: format!("BasisSet.{b}"),
            body,
        });
    }

    let mut setups: Vec<String> = Vec::new();
    for c in 1..=rng.random_range(min_calculations..=min_calculations.max(3)) {
        let mol = &doc.molecules[rng.random_range(0..doc.molecules.len())];
        let numbers = mol.element_numbers();
        let setup = if !setups.is_empty() && rng.random_bool(0.2) {
            SetupEntry::Reference(IdRef(setups[rng.random_range(0..setups.len())].clone()))
        } else {
            let charge = rng.random_range(-1..=1);
            let id = format!("calculationSetup.{c}");
            setups.push(id.clone());
            SetupEntry::Inline(CalculationSetup {
                id,
                molecule: IdRef(mol.id.clone()),
                charge,
                multiplicity: rng.random_range(1..=3),
                number_of_electrons: (numbers.iter().map(|&z| z as i64).sum::<i64>() - charge) as u64,
                wave_function_type: rng.random_bool(0.7).then(|| "RHF".to_string()),
                wave_function_theory: rng.random_bool(0.7).then(|| "Hartree-Fock".to_string()),
                basis_set: (!doc.basis_sets.is_empty() && rng.random_bool(0.7))
                    .then(|| IdRef(doc.basis_sets[rng.random_range(0..doc.basis_sets.len())].id.clone())),
                input_vectors: rng.random_bool(0.3).then(|| "./run.movecs".to_string()),
                output_vectors: rng.random_bool(0.3).then(|| "./run.movecs".to_string()),
                extra: extras(rng),
            })
        };

        let results = rng.random_bool(0.8).then(|| {
            let mut records = vec![PropertyRecord {
                target: Some(PropertyTarget::Molecule(IdRef(mol.id.clone()))),
                properties: vec![
                    ("dipoleMoment".into(), PropertyValue::Group(vec![("totalMoment".into(), au(rng))])),
                    (
                        "quadrupoleMoment".into(),
                        PropertyValue::Group(vec![
                            ("diamagneticSusceptibility".into(), au(rng)),
                            ("momentXZ".into(), au(rng)),
                        ]),
                    ),
                ],
            }];
            for _ in 0..rng.random_range(0..3) {
                let atom = &mol.atoms[rng.random_range(0..mol.atoms.len())];
                records.push(PropertyRecord {
                    target: Some(PropertyTarget::Atom(IdRef(atom.id.clone()))),
                    properties: vec![("diamagneticShielding".into(), PropertyValue::Quantity(au(rng)))],
                });
            }
            CalculationResults {
                molecular_properties: records,
                vibrational_frequencies: rng.random_bool(0.3).then(|| {
                    (0..rng.random_range(1..6))
                        .map(|_| Quantity::scalar(rng.random_range(-300.0..4000.0), Units::Wavenumber))
                        .collect()
                }),
                extra: extras(rng),
            }
        });

        doc.calculations.push(Calculation {
            calculation_type: "molecularProperties".into(),
            molecular_formula: hill_formula(&numbers).unwrap(),
            id: format!("calculation.{c}"),
            setup,
            results,
            extra: extras(rng),
        });
    }
    doc
}

/// Every reference-bearing field of the document, in document order.
pub fn reference_slots(doc: &mut ExtChemDocument) -> Vec<&mut IdRef> {
    let mut slots = Vec::new();
    for c in &mut doc.calculations {
        match &mut c.setup {
            SetupEntry::Inline(s) => {
                slots.push(&mut s.molecule);
                if let Some(b) = &mut s.basis_set {
                    slots.push(b);
                }
            }
            SetupEntry::Reference(r) => slots.push(r),
        }
        if let Some(r) = &mut c.results {
            for rec in &mut r.molecular_properties {
                match &mut rec.target {
                    Some(PropertyTarget::Molecule(id)) | Some(PropertyTarget::Atom(id)) => slots.push(id),
                    None => {}
                }
            }
        }
    }
    slots
}
