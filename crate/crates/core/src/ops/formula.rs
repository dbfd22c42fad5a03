// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use crate::elements;
use crate::error::{Error, Result};

/// Molecular formula in Hill order: carbon, then hydrogen, then everything
/// else alphabetically by symbol. Without carbon every element, hydrogen
/// included, is alphabetical. A count of one is not written.
pub fn hill_formula(element_numbers: &[u32]) -> Result<String> {
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for &z in element_numbers {
        let symbol = elements::symbol(z).ok_or_else(|| Error::UnknownElement(z.to_string()))?;
        *counts.entry(symbol).or_default() += 1;
    }

    let mut order: Vec<(&str, usize)> = Vec::with_capacity(counts.len());
    if let Some(c) = counts.remove("C") {
        order.push(("C", c));
        if let Some(h) = counts.remove("H") {
            order.push(("H", h));
        }
    }
    order.extend(counts);

    let mut out = String::new();
    for (symbol, count) in order {
        out.push_str(symbol);
        if count > 1 {
            out.push_str(&count.to_string());
        }
    }
    Ok(out)
}
