// SPDX-License-Identifier: Apache-2.0

//! Periodic table lookups and covalent radii.

use std::sync::OnceLock;

/// Highest atomic number known to the table.
pub const MAX_ATOMIC_NUMBER: u32 = 118;

const ELEMENTS: [(&str, &str); 118] = [
    ("H", "Hydrogen"),
    ("He", "Helium"),
    ("Li", "Lithium"),
    ("Be", "Beryllium"),
    ("B", "Boron"),
    ("C", "Carbon"),
    ("N", "Nitrogen"),
    ("O", "Oxygen"),
    ("F", "Fluorine"),
    ("Ne", "Neon"),
    ("Na", "Sodium"),
    ("Mg", "Magnesium"),
    ("Al", "Aluminium"),
    ("Si", "Silicon"),
    ("P", "Phosphorus"),
    ("S", "Sulfur"),
    ("Cl", "Chlorine"),
    ("Ar", "Argon"),
    ("K", "Potassium"),
    ("Ca", "Calcium"),
    ("Sc", "Scandium"),
    ("Ti", "Titanium"),
    ("V", "Vanadium"),
    ("Cr", "Chromium"),
    ("Mn", "Manganese"),
    ("Fe", "Iron"),
    ("Co", "Cobalt"),
    ("Ni", "Nickel"),
    ("Cu", "Copper"),
    ("Zn", "Zinc"),
    ("Ga", "Gallium"),
    ("Ge", "Germanium"),
    ("As", "Arsenic"),
    ("Se", "Selenium"),
    ("Br", "Bromine"),
    ("Kr", "Krypton"),
    ("Rb", "Rubidium"),
    ("Sr", "Strontium"),
    ("Y", "Yttrium"),
    ("Zr", "Zirconium"),
    ("Nb", "Niobium"),
    ("Mo", "Molybdenum"),
    ("Tc", "Technetium"),
    ("Ru", "Ruthenium"),
    ("Rh", "Rhodium"),
    ("Pd", "Palladium"),
    ("Ag", "Silver"),
    ("Cd", "Cadmium"),
    ("In", "Indium"),
    ("Sn", "Tin"),
    ("Sb", "Antimony"),
    ("Te", "Tellurium"),
    ("I", "Iodine"),
    ("Xe", "Xenon"),
    ("Cs", "Caesium"),
    ("Ba", "Barium"),
    ("La", "Lanthanum"),
    ("Ce", "Cerium"),
    ("Pr", "Praseodymium"),
    ("Nd", "Neodymium"),
    ("Pm", "Promethium"),
    ("Sm", "Samarium"),
    ("Eu", "Europium"),
    ("Gd", "Gadolinium"),
    ("Tb", "Terbium"),
    ("Dy", "Dysprosium"),
    ("Ho", "Holmium"),
    ("Er", "Erbium"),
    ("Tm", "Thulium"),
    ("Yb", "Ytterbium"),
    ("Lu", "Lutetium"),
    ("Hf", "Hafnium"),
    ("Ta", "Tantalum"),
    ("W", "Tungsten"),
    ("Re", "Rhenium"),
    ("Os", "Osmium"),
    ("Ir", "Iridium"),
    ("Pt", "Platinum"),
    ("Au", "Gold"),
    ("Hg", "Mercury"),
    ("Tl", "Thallium"),
    ("Pb", "Lead"),
    ("Bi", "Bismuth"),
    ("Po", "Polonium"),
    ("At", "Astatine"),
    ("Rn", "Radon"),
    ("Fr", "Francium"),
    ("Ra", "Radium"),
    ("Ac", "Actinium"),
    ("Th", "Thorium"),
    ("Pa", "Protactinium"),
    ("U", "Uranium"),
    ("Np", "Neptunium"),
    ("Pu", "Plutonium"),
    ("Am", "Americium"),
    ("Cm", "Curium"),
    ("Bk", "Berkelium"),
    ("Cf", "Californium"),
    ("Es", "Einsteinium"),
    ("Fm", "Fermium"),
    ("Md", "Mendelevium"),
    ("No", "Nobelium"),
    ("Lr", "Lawrencium"),
    ("Rf", "Rutherfordium"),
    ("Db", "Dubnium"),
    ("Sg", "Seaborgium"),
    ("Bh", "Bohrium"),
    ("Hs", "Hassium"),
    ("Mt", "Meitnerium"),
    ("Ds", "Darmstadtium"),
    ("Rg", "Roentgenium"),
    ("Cn", "Copernicium"),
    ("Nh", "Nihonium"),
    ("Fl", "Flerovium"),
    ("Mc", "Moscovium"),
    ("Lv", "Livermorium"),
    ("Ts", "Tennessine"),
    ("Og", "Oganesson"),
];

pub fn is_valid_number(number: u32) -> bool {
    (1..=MAX_ATOMIC_NUMBER).contains(&number)
}

/// Symbol for an atomic number, e.g. `8 -> "O"`.
pub fn symbol(number: u32) -> Option<&'static str> {
    is_valid_number(number).then(|| ELEMENTS[number as usize - 1].0)
}

/// English element name, e.g. `8 -> "Oxygen"`.
pub fn name(number: u32) -> Option<&'static str> {
    is_valid_number(number).then(|| ELEMENTS[number as usize - 1].1)
}

/// Atomic number for a symbol. Matching ignores case, so `"o"`, `"O"` and
/// `"CL"` all resolve.
pub fn number_from_symbol(symbol: &str) -> Option<u32> {
    ELEMENTS
        .iter()
        .position(|(s, _)| s.eq_ignore_ascii_case(symbol))
        .map(|i| i as u32 + 1)
}

/// Normalizes a symbol to periodic-table case (`"cl" -> "Cl"`).
pub fn normalize_symbol(symbol: &str) -> Option<&'static str> {
    number_from_symbol(symbol).and_then(self::symbol)
}

static RADII: OnceLock<Vec<f64>> = OnceLock::new();

fn radii() -> &'static [f64] {
    RADII.get_or_init(|| {
        let mut table = Vec::with_capacity(96);
        for line in include_str!("../data/covalent_radii.csv").lines() {
            if line.starts_with('#') || line.starts_with("number") || line.is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let number: usize = cols.next().and_then(|c| c.parse().ok()).expect("radius table");
            let radius: f64 = cols.nth(1).and_then(|c| c.parse().ok()).expect("radius table");
            assert_eq!(number, table.len() + 1, "radius table out of order");
            table.push(radius);
        }
        table
    })
}

/// Single-bond covalent radius in angstrom. Covers elements 1 through 96.
pub fn covalent_radius(number: u32) -> Option<f64> {
    (number >= 1).then(|| radii().get(number as usize - 1).copied()).flatten()
}

/// Number of elements with a tabulated covalent radius.
pub fn covalent_radius_count() -> usize {
    radii().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(symbol(8), Some("O"));
        assert_eq!(name(1), Some("Hydrogen"));
        assert_eq!(symbol(118), Some("Og"));
        assert_eq!(symbol(0), None);
        assert_eq!(symbol(119), None);
        assert_eq!(number_from_symbol("o"), Some(8));
        assert_eq!(number_from_symbol("Xx"), None);
        assert_eq!(normalize_symbol("CL"), Some("Cl"));
    }

    #[test]
    fn radii_table_is_complete_and_positive() {
        assert_eq!(covalent_radius_count(), 96);
        for z in 1..=96 {
            assert!(covalent_radius(z).unwrap() > 0.0, "element {z}");
        }
        assert_eq!(covalent_radius(1), Some(0.31));
        assert_eq!(covalent_radius(6), Some(0.76));
        assert_eq!(covalent_radius(8), Some(0.66));
        assert_eq!(covalent_radius(97), None);
        assert_eq!(covalent_radius(0), None);
    }

    #[test]
    fn symbols_are_unique() {
        for (i, (s, _)) in ELEMENTS.iter().enumerate() {
            assert_eq!(number_from_symbol(s), Some(i as u32 + 1));
        }
    }
}
