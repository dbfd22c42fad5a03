// SPDX-License-Identifier: Apache-2.0

//! Chemical JSON and ExtendedChem JSON documents: parsing, validation,
//! canonical serialization, conversion between the two, and conversion of
//! quantum-chemistry log output.

pub mod cjson;
pub mod document;
pub mod elements;
pub mod error;
pub mod extchem;
pub mod ids;
mod json;
pub mod nwparse;
pub mod ops;
pub mod par;
pub mod units;

pub use cjson::{
    displaced_coordinates, parse_cjson, serialize_cjson, validate_cjson, AtomArrays, BondArrays,
    CjsonDocument, Vibrations,
};
pub use document::{detect_format, parse_document, Document, Format};
pub use error::{Error, Result, Violation};
pub use extchem::{
    parse_extchem, serialize_extchem, validate_extchem, AtomObject, Calculation, CalculationResults,
    CalculationSetup, ExtChemDocument, IdRef, Molecule, PropertyRecord, PropertyTarget,
    PropertyValue, SetupEntry,
};
pub use ids::{build_id_index, resolve_reference, validate_references, IdIndex, IdTarget};
pub use nwparse::{parse_log, split_tasks};
pub use ops::{
    cjson_to_extchem, extchem_to_cjson, hill_formula, perceive_bonds, perceive_bonds_with,
    ConversionOptions, DEFAULT_BOND_TOLERANCE,
};
pub use units::{convert_quantity, Quantity, QuantityValue, Units, BOHR_TO_ANGSTROM};
