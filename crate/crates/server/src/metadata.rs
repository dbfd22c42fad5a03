// SPDX-License-Identifier: Apache-2.0

//! Searchable summary of a stored document.

use chemdata::{elements, hill_formula, Document, Units};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Metadata {
    pub formula: String,
    pub atom_count: usize,
    /// Distinct element symbols, in formula order.
    pub element_set: Vec<String>,
    pub has_vibrations: bool,
    pub calculation_types: Vec<String>,
    /// Atomic units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dipole_total: Option<f64>,
}

impl Metadata {
    pub fn has_element(&self, symbol: &str) -> bool {
        self.element_set.iter().any(|s| s.eq_ignore_ascii_case(symbol))
    }
}

/// Metadata for a validated document. Element numbers outside the table
/// cannot occur in validated documents; they are skipped rather than
/// reported.
pub fn extract_metadata(doc: &Document) -> Metadata {
    let numbers = doc.element_numbers();
    let formula = hill_formula(&numbers).unwrap_or_default();

    let mut distinct: Vec<u32> = numbers.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut element_set: Vec<String> = distinct
        .iter()
        .filter_map(|&z| elements::symbol(z))
        .map(str::to_string)
        .collect();
    // same order as the Hill formula: C, H, then alphabetical
    element_set.sort_by_key(|s| (hill_rank(s, &distinct), s.clone()));

    let (has_vibrations, calculation_types, dipole_total) = match doc {
        Document::Cjson(d) => (d.mode_count() > 0, Vec::new(), None),
        Document::ExtChem(d) => {
            let mut types: Vec<String> = Vec::new();
            for c in &d.calculations {
                if !types.contains(&c.calculation_type) {
                    types.push(c.calculation_type.clone());
                }
            }
            let vibrations = d
                .calculations
                .iter()
                .filter_map(|c| c.results.as_ref())
                .any(|r| r.vibrational_frequencies.as_ref().is_some_and(|f| !f.is_empty()));
            let dipole = d
                .first_dipole_total()
                .filter(|q| q.units == Units::AtomicUnits)
                .and_then(|q| q.value.as_scalar());
            (vibrations, types, dipole)
        }
    };

    Metadata {
        formula,
        atom_count: numbers.len(),
        element_set,
        has_vibrations,
        calculation_types,
        dipole_total,
    }
}

fn hill_rank(symbol: &str, distinct: &[u32]) -> u8 {
    let has_carbon = distinct.contains(&6);
    match symbol {
        "C" => 0,
        "H" if has_carbon => 1,
        _ => 2,
    }
}
