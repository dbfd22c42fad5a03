// SPDX-License-Identifier: Apache-2.0

//! Id references in ExtendedChem documents.
//!
//! A document is walked in a fixed order (molecules and their atoms, basis
//! sets, then each calculation followed by its setup and results). Every
//! `id` seen is a definition; every field naming an id is a reference. A
//! reference resolves to the first definition of that id, which must come
//! earlier in the walk.

use std::collections::HashMap;

use crate::error::{Error, Result, Violation};
use crate::extchem::{
    AtomObject, BasisSet, Calculation, CalculationSetup, ExtChemDocument, IdRef, Molecule,
    PropertyTarget, SetupEntry,
};

#[derive(Debug, Clone, Copy)]
pub enum IdTarget<'a> {
    Molecule(&'a Molecule),
    Atom(&'a AtomObject),
    BasisSet(&'a BasisSet),
    Calculation(&'a Calculation),
    Setup(&'a CalculationSetup),
}

impl IdTarget<'_> {
    pub fn kind(&self) -> TargetKind {
        match self {
            IdTarget::Molecule(_) => TargetKind::Molecule,
            IdTarget::Atom(_) => TargetKind::Atom,
            IdTarget::BasisSet(_) => TargetKind::BasisSet,
            IdTarget::Calculation(_) => TargetKind::Calculation,
            IdTarget::Setup(_) => TargetKind::Setup,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    Molecule,
    Atom,
    BasisSet,
    Calculation,
    Setup,
}

#[derive(Debug, Clone)]
pub struct IdEntry<'a> {
    pub id: &'a str,
    pub path: String,
    /// Position of the definition in the walk.
    pub ordinal: usize,
    pub target: IdTarget<'a>,
}

/// Map from id to its first definition, iterable in document order.
#[derive(Debug, Clone, Default)]
pub struct IdIndex<'a> {
    entries: Vec<IdEntry<'a>>,
    by_id: HashMap<&'a str, usize>,
}

impl<'a> IdIndex<'a> {
    pub fn get(&self, id: &str) -> Option<&IdEntry<'a>> {
        self.by_id.get(id).map(|&i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IdEntry<'a>> {
        self.entries.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &'a str> + '_ {
        self.entries.iter().map(|e| e.id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicate {
    pub id: String,
    pub first: String,
    pub second: String,
}

/// A field that names another object.
#[derive(Debug, Clone)]
pub struct ReferenceSite<'a> {
    pub reference: &'a IdRef,
    pub path: String,
    pub ordinal: usize,
    pub expects: TargetKind,
}

enum Site<'a> {
    Definition(IdEntry<'a>),
    Reference(ReferenceSite<'a>),
}

fn def<'a>(sites: &mut Vec<Site<'a>>, id: &'a str, path: String, target: IdTarget<'a>) {
    let ordinal = sites.len();
    sites.push(Site::Definition(IdEntry {
        id,
        path,
        ordinal,
        target,
    }));
}

fn reference<'a>(sites: &mut Vec<Site<'a>>, reference: &'a IdRef, path: String, expects: TargetKind) {
    let ordinal = sites.len();
    sites.push(Site::Reference(ReferenceSite {
        reference,
        path,
        ordinal,
        expects,
    }));
}

fn walk(doc: &ExtChemDocument) -> Vec<Site<'_>> {
    let mut sites = Vec::new();

    for (i, m) in doc.molecules.iter().enumerate() {
        def(&mut sites, &m.id, format!("molecules[{i}]"), IdTarget::Molecule(m));
        for (j, a) in m.atoms.iter().enumerate() {
            def(
                &mut sites,
                &a.id,
                format!("molecules[{i}].atoms[{j}]"),
                IdTarget::Atom(a),
            );
        }
    }
    for (i, b) in doc.basis_sets.iter().enumerate() {
        def(&mut sites, &b.id, format!("basisSets[{i}]"), IdTarget::BasisSet(b));
    }

    for (i, c) in doc.calculations.iter().enumerate() {
        let cpath = format!("calculations[{i}]");
        def(&mut sites, &c.id, cpath.clone(), IdTarget::Calculation(c));
        let spath = format!("{cpath}.calculationSetup");
        match &c.setup {
            SetupEntry::Inline(s) => {
                def(&mut sites, &s.id, spath.clone(), IdTarget::Setup(s));
                reference(&mut sites, &s.molecule, format!("{spath}.molecule"), TargetKind::Molecule);
                if let Some(b) = &s.basis_set {
                    reference(&mut sites, b, format!("{spath}.basisSet"), TargetKind::BasisSet);
                }
            }
            SetupEntry::Reference(r) => reference(&mut sites, r, spath, TargetKind::Setup),
        }
        if let Some(results) = &c.results {
            for (k, rec) in results.molecular_properties.iter().enumerate() {
                let rpath = format!("{cpath}.calculationResults.molecularProperties[{k}]");
                match &rec.target {
                    Some(PropertyTarget::Molecule(r)) => {
                        reference(&mut sites, r, format!("{rpath}.molecule"), TargetKind::Molecule)
                    }
                    Some(PropertyTarget::Atom(r)) => {
                        reference(&mut sites, r, format!("{rpath}.atom"), TargetKind::Atom)
                    }
                    None => {}
                }
            }
        }
    }
    sites
}

pub(crate) fn index_with_duplicates(doc: &ExtChemDocument) -> (IdIndex<'_>, Vec<Duplicate>) {
    let mut index = IdIndex::default();
    let mut duplicates = Vec::new();
    for site in walk(doc) {
        if let Site::Definition(entry) = site {
            if let Some(&first) = index.by_id.get(entry.id) {
                duplicates.push(Duplicate {
                    id: entry.id.to_string(),
                    first: index.entries[first].path.clone(),
                    second: entry.path,
                });
            } else {
                index.by_id.insert(entry.id, index.entries.len());
                index.entries.push(entry);
            }
        }
    }
    (index, duplicates)
}

/// Indexes every id-bearing object. An id defined twice is an error.
pub fn build_id_index(doc: &ExtChemDocument) -> Result<IdIndex<'_>> {
    let (index, duplicates) = index_with_duplicates(doc);
    match duplicates.into_iter().next() {
        None => Ok(index),
        Some(d) => Err(Error::DuplicateId {
            id: d.id,
            first: d.first,
            second: d.second,
        }),
    }
}

pub fn resolve_reference<'i, 'a>(index: &'i IdIndex<'a>, reference: &IdRef) -> Result<&'i IdEntry<'a>> {
    index
        .get(reference.as_str())
        .ok_or_else(|| Error::DanglingReference(reference.0.clone()))
}

/// Every reference field in document order.
pub fn reference_sites(doc: &ExtChemDocument) -> Vec<ReferenceSite<'_>> {
    walk(doc)
        .into_iter()
        .filter_map(|s| match s {
            Site::Reference(r) => Some(r),
            Site::Definition(_) => None,
        })
        .collect()
}

pub(crate) fn reference_violations(doc: &ExtChemDocument, index: &IdIndex<'_>) -> Vec<Violation> {
    let mut out = Vec::new();
    for site in reference_sites(doc) {
        let Some(entry) = index.get(site.reference.as_str()) else {
            out.push(Violation::new(
                site.path,
                "dangling-reference",
                format!("{:?} is not defined", site.reference.0),
            ));
            continue;
        };
        if entry.ordinal > site.ordinal {
            out.push(Violation::new(
                site.path,
                "forward-reference",
                format!("{:?} is first defined later, at {}", site.reference.0, entry.path),
            ));
        } else if entry.target.kind() != site.expects {
            out.push(Violation::new(
                site.path,
                "wrong-kind",
                format!(
                    "{:?} is a {:?}, expected a {:?}",
                    site.reference.0,
                    entry.target.kind(),
                    site.expects
                ),
            ));
        }
    }
    out
}

/// Lists every reference that does not resolve to an earlier definition of
/// the right kind. Empty iff the document is fully linked.
pub fn validate_references(doc: &ExtChemDocument) -> Vec<Violation> {
    let (index, _) = index_with_duplicates(doc);
    reference_violations(doc, &index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extchem::{atom_from_element, PropertyRecord};
    use crate::units::{Quantity, Units};

    fn molecule(id: &str, n: usize, mol: usize) -> Molecule {
        Molecule {
            id: id.into(),
            atoms: (1..=n)
                .map(|k| {
                    atom_from_element(
                        format!("Atom.{k}.Mol.{mol}"),
                        1,
                        Quantity::vector(vec![0.0, 0.0, k as f64], Units::Angstrom),
                    )
                    .unwrap()
                })
                .collect(),
            ..Default::default()
        }
    }

    fn calc(id: &str, setup_id: &str, mol: &str) -> Calculation {
        Calculation {
            calculation_type: "energy".into(),
            molecular_formula: "H2".into(),
            id: id.into(),
            setup: SetupEntry::Inline(CalculationSetup {
                id: setup_id.into(),
                molecule: mol.into(),
                charge: 0,
                multiplicity: 1,
                number_of_electrons: 2,
                wave_function_type: None,
                wave_function_theory: None,
                basis_set: None,
                input_vectors: None,
                output_vectors: None,
                extra: Default::default(),
            }),
            results: None,
            extra: Default::default(),
        }
    }

    #[test]
    fn empty_index() {
        let doc = ExtChemDocument::default();
        assert!(build_id_index(&doc).unwrap().is_empty());
        assert!(validate_references(&doc).is_empty());
    }

    #[test]
    fn index_in_document_order() {
        let doc = ExtChemDocument {
            molecules: vec![molecule("Molecule.1", 2, 1)],
            calculations: vec![calc("calculation.1", "calculationSetup.1", "Molecule.1")],
            ..Default::default()
        };
        let index = build_id_index(&doc).unwrap();
        let ids: Vec<_> = index.ids().collect();
        assert_eq!(
            ids,
            ["Molecule.1", "Atom.1.Mol.1", "Atom.2.Mol.1", "calculation.1", "calculationSetup.1"]
        );
        let entry = resolve_reference(&index, &"Atom.2.Mol.1".into()).unwrap();
        assert!(matches!(entry.target, IdTarget::Atom(a) if std::ptr::eq(a, &doc.molecules[0].atoms[1])));
        assert!(matches!(
            resolve_reference(&index, &"BasisSet.99".into()),
            Err(Error::DanglingReference(id)) if id == "BasisSet.99"
        ));
    }

    #[test]
    fn duplicate_definition() {
        let doc = ExtChemDocument {
            molecules: vec![molecule("Molecule.1", 1, 1), molecule("Molecule.1", 0, 2)],
            ..Default::default()
        };
        match build_id_index(&doc) {
            Err(Error::DuplicateId { id, first, second }) => {
                assert_eq!(id, "Molecule.1");
                assert_eq!(first, "molecules[0]");
                assert_eq!(second, "molecules[1]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_forward_and_wrong_kind() {
        let mut doc = ExtChemDocument {
            molecules: vec![molecule("Molecule.1", 2, 1)],
            calculations: vec![calc("calculation.1", "calculationSetup.1", "Molecule.2")],
            ..Default::default()
        };
        let v = validate_references(&doc);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "calculations[0].calculationSetup.molecule");
        assert_eq!(v[0].rule, "dangling-reference");

        doc.calculations[0] = calc("calculation.1", "calculationSetup.1", "Atom.1.Mol.1");
        assert_eq!(validate_references(&doc)[0].rule, "wrong-kind");

        let mut first = calc("calculation.1", "x", "Molecule.1");
        first.setup = SetupEntry::Reference("calculationSetup.2".into());
        doc.calculations = vec![first, calc("calculation.2", "calculationSetup.2", "Molecule.1")];
        let v = validate_references(&doc);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, "forward-reference");
    }

    #[test]
    fn atom_scoped_records_are_references() {
        let mut c = calc("calculation.1", "calculationSetup.1", "Molecule.1");
        c.results = Some(crate::extchem::CalculationResults {
            molecular_properties: vec![PropertyRecord {
                target: Some(PropertyTarget::Atom("Atom.3.Mol.1".into())),
                properties: vec![],
            }],
            ..Default::default()
        });
        let doc = ExtChemDocument {
            molecules: vec![molecule("Molecule.1", 2, 1)],
            calculations: vec![c],
            ..Default::default()
        };
        let v = validate_references(&doc);
        assert_eq!(v.len(), 1);
        assert_eq!(
            v[0].path,
            "calculations[0].calculationResults.molecularProperties[0].atom"
        );
    }
}
