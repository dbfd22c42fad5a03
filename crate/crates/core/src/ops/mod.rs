// SPDX-License-Identifier: Apache-2.0

//! Operations spanning both formats: formulas, bond perception, conversion.

pub mod bonds;
pub mod convert;
pub mod formula;

pub use bonds::{perceive_bonds, perceive_bonds_with, DEFAULT_BOND_TOLERANCE};
pub use convert::{cjson_to_extchem, extchem_to_cjson, extchem_to_cjson_with, ConversionOptions};
pub use formula::hill_formula;
