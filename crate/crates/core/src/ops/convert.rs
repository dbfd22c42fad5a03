// SPDX-License-Identifier: Apache-2.0

//! Mapping between the two formats.

use crate::cjson::{validate_cjson, CjsonDocument, Vibrations};
use crate::error::{Error, Result};
use crate::extchem::{atom_coordinates, atom_from_element, ExtChemDocument, IdRef, Molecule, SetupEntry};
use crate::ops::bonds::{bond_pairs, DEFAULT_BOND_TOLERANCE};
use crate::cjson::BondArrays;
use crate::units::{Quantity, Units};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversionOptions {
    /// Scale on summed covalent radii used for bond perception.
    pub bond_tolerance: f64,
}

impl Default for ConversionOptions {
    fn default() -> Self {
        Self {
            bond_tolerance: DEFAULT_BOND_TOLERANCE,
        }
    }
}

/// The molecule a conversion would use: the named one, or else the last
/// molecule in the document.
pub fn select_molecule<'a>(doc: &'a ExtChemDocument, molecule_id: Option<&IdRef>) -> Result<Option<&'a Molecule>> {
    match molecule_id {
        Some(id) => doc
            .molecule(id.as_str())
            .map(Some)
            .ok_or_else(|| Error::DanglingReference(id.0.clone())),
        None => Ok(doc.molecules.last()),
    }
}

pub fn extchem_to_cjson(doc: &ExtChemDocument, molecule_id: Option<&IdRef>) -> Result<CjsonDocument> {
    extchem_to_cjson_with(doc, molecule_id, &ConversionOptions::default())
}

pub fn extchem_to_cjson_with(
    doc: &ExtChemDocument,
    molecule_id: Option<&IdRef>,
    options: &ConversionOptions,
) -> Result<CjsonDocument> {
    let Some(molecule) = select_molecule(doc, molecule_id)? else {
        return Ok(CjsonDocument::default());
    };

    let mut coords = Vec::with_capacity(3 * molecule.atoms.len());
    for atom in &molecule.atoms {
        coords.extend(atom_coordinates(atom, Units::Angstrom)?);
    }
    let numbers = molecule.element_numbers();
    let pairs = bond_pairs(&numbers, &coords, options.bond_tolerance)?;

    let mut out = CjsonDocument::new(numbers, coords);
    if !pairs.is_empty() {
        out.bonds = Some(BondArrays::from_pairs(&pairs));
    }
    out.vibrations = frequencies_for(doc, &molecule.id)?.map(|frequencies| Vibrations {
        frequencies,
        ..Default::default()
    });
    Ok(out)
}

/// Frequencies (cm-1) from the last calculation on `molecule_id` that
/// reports any.
fn frequencies_for(doc: &ExtChemDocument, molecule_id: &str) -> Result<Option<Vec<f64>>> {
    let setup_molecule = |entry: &SetupEntry| -> Option<String> {
        match entry {
            SetupEntry::Inline(s) => Some(s.molecule.0.clone()),
            SetupEntry::Reference(r) => doc
                .calculations
                .iter()
                .filter_map(|c| c.inline_setup())
                .find(|s| s.id == r.0)
                .map(|s| s.molecule.0.clone()),
        }
    };
    let Some(freqs) = doc
        .calculations
        .iter()
        .rev()
        .filter(|c| setup_molecule(&c.setup).as_deref() == Some(molecule_id))
        .filter_map(|c| c.results.as_ref()?.vibrational_frequencies.as_ref())
        .find(|f| !f.is_empty())
    else {
        return Ok(None);
    };
    freqs
        .iter()
        .map(|q| {
            let factor = q.units.factor_to(Units::Wavenumber)?;
            q.value
                .as_scalar()
                .map(|x| x * factor)
                .ok_or_else(|| Error::MissingField("vibrationalFrequencies value".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// One molecule `Molecule.1` with atoms `Atom.{k}.Mol.1`, coordinates in
/// angstrom. Bonds and vibrations are not carried over.
pub fn cjson_to_extchem(doc: &CjsonDocument) -> Result<ExtChemDocument> {
    let violations = validate_cjson(doc);
    if !violations.is_empty() {
        return Err(Error::InvariantViolation(violations));
    }
    let atoms = doc
        .atoms
        .element_numbers
        .iter()
        .zip(doc.atoms.coords3d.chunks_exact(3))
        .enumerate()
        .map(|(k, (&z, xyz))| {
            atom_from_element(
                format!("Atom.{}.Mol.1", k + 1),
                z,
                Quantity::vector(xyz.to_vec(), Units::Angstrom),
            )
        })
        .collect::<Result<_>>()?;
    Ok(ExtChemDocument {
        molecules: vec![Molecule {
            id: "Molecule.1".into(),
            atoms,
            ..Default::default()
        }],
        ..Default::default()
    })
}
