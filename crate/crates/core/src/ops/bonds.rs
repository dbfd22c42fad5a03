// SPDX-License-Identifier: Apache-2.0

//! Distance-based bond perception.
//!
//! Atoms `i` and `j` are bonded when their distance is at most
//! `tolerance * (r_i + r_j)` with `r` the covalent radius. Candidate pairs
//! come from a uniform grid whose cell edge is the largest possible cutoff,
//! so only the 27 surrounding cells need checking.

use std::collections::HashMap;

use crate::cjson::BondArrays;
use crate::elements;
use crate::error::{Error, Result, Violation};

/// Default scale on the summed covalent radii.
pub const DEFAULT_BOND_TOLERANCE: f64 = 1.25;

#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 2048;

type Cell = [i64; 3];

struct Grid<'a> {
    coords: &'a [f64],
    radii: Vec<f64>,
    tolerance: f64,
    edge: f64,
    cells: HashMap<Cell, Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn new(element_numbers: &[u32], coords: &'a [f64], tolerance: f64) -> Result<Self> {
        if coords.len() != 3 * element_numbers.len() {
            return Err(Error::InvariantViolation(vec![Violation::new(
                "atoms.coords.3d",
                "length-mismatch",
                format!(
                    "{} coordinates for {} atoms",
                    coords.len(),
                    element_numbers.len()
                ),
            )]));
        }
        let radii = element_numbers
            .iter()
            .map(|&z| elements::covalent_radius(z).ok_or_else(|| Error::UnknownElement(z.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let max_r = radii.iter().copied().fold(0.0, f64::max);
        let edge = (2.0 * max_r * tolerance).max(1e-6);

        let mut cells: HashMap<Cell, Vec<usize>> = HashMap::new();
        for i in 0..radii.len() {
            cells.entry(cell_of(&coords[3 * i..3 * i + 3], edge)).or_default().push(i);
        }
        Ok(Self {
            coords,
            radii,
            tolerance,
            edge,
            cells,
        })
    }

    fn len(&self) -> usize {
        self.radii.len()
    }

    /// Partners `j > i` bonded to atom `i`, ascending.
    fn partners(&self, i: usize) -> Vec<usize> {
        let p = &self.coords[3 * i..3 * i + 3];
        let [cx, cy, cz] = cell_of(p, self.edge);
        let mut found = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let cell = [cx.saturating_add(dx), cy.saturating_add(dy), cz.saturating_add(dz)];
                    let Some(members) = self.cells.get(&cell) else {
                        continue;
                    };
                    for &j in members.iter().filter(|&&j| j > i) {
                        let q = &self.coords[3 * j..3 * j + 3];
                        let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2);
                        let cutoff = self.tolerance * (self.radii[i] + self.radii[j]);
                        if d2 <= cutoff * cutoff {
                            found.push(j);
                        }
                    }
                }
            }
        }
        found.sort_unstable();
        // saturated cells at the i64 edges can be visited twice
        found.dedup();
        found
    }
}

fn cell_of(p: &[f64], edge: f64) -> Cell {
    [
        (p[0] / edge).floor() as i64,
        (p[1] / edge).floor() as i64,
        (p[2] / edge).floor() as i64,
    ]
}

/// Bonded pairs `(i, j)` with `i < j`, sorted, computed on one thread.
pub fn bond_pairs_sequential(
    element_numbers: &[u32],
    coords3d: &[f64],
    tolerance: f64,
) -> Result<Vec<(usize, usize)>> {
    let grid = Grid::new(element_numbers, coords3d, tolerance)?;
    Ok((0..grid.len())
        .flat_map(|i| grid.partners(i).into_iter().map(move |j| (i, j)))
        .collect())
}

/// Same result as [`bond_pairs_sequential`], with atoms split across the
/// rayon pool.
#[cfg(feature = "parallel")]
pub fn bond_pairs_parallel(
    element_numbers: &[u32],
    coords3d: &[f64],
    tolerance: f64,
) -> Result<Vec<(usize, usize)>> {
    use rayon::prelude::*;

    let grid = Grid::new(element_numbers, coords3d, tolerance)?;
    Ok((0..grid.len())
        .into_par_iter()
        .flat_map_iter(|i| grid.partners(i).into_iter().map(move |j| (i, j)))
        .collect())
}

pub fn bond_pairs(
    element_numbers: &[u32],
    coords3d: &[f64],
    tolerance: f64,
) -> Result<Vec<(usize, usize)>> {
    #[cfg(feature = "parallel")]
    {
        if element_numbers.len() >= PARALLEL_THRESHOLD {
            return bond_pairs_parallel(element_numbers, coords3d, tolerance);
        }
    }
    bond_pairs_sequential(element_numbers, coords3d, tolerance)
}

/// Single bonds between every pair within the default tolerance.
pub fn perceive_bonds(element_numbers: &[u32], coords3d: &[f64]) -> Result<BondArrays> {
    perceive_bonds_with(element_numbers, coords3d, DEFAULT_BOND_TOLERANCE)
}

pub fn perceive_bonds_with(
    element_numbers: &[u32],
    coords3d: &[f64],
    tolerance: f64,
) -> Result<BondArrays> {
    let pairs = bond_pairs(element_numbers, coords3d, tolerance)?;
    Ok(BondArrays::from_pairs(&pairs))
}
