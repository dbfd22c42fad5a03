// SPDX-License-Identifier: Apache-2.0

//! Line-printer log output to ExtendedChem documents.
//!
//! The log is cut into sections by header lines:
//!
//! * `Geometry ...` followed by `Output coordinates in <units>` within a few
//!   lines: a coordinate table (`No. Tag Charge X Y Z`).
//! * `NWChem SCF Module` / `NWChem DFT Module`: `key = value` summary lines,
//!   including `Total SCF energy = ...`. Runs until the next header or
//!   module banner.
//! * `Multipole moments (<units>)`: rows of `Dipole <component> <value>` and
//!   `Quadrupole <name> <value>`.
//! * `Normal Eigenvalue ...`: rows of `<mode> <frequency> [|| ...]`, cm-1.
//! * `Task  times ...`: closes the current task.
//!
//! Table blocks start reading rows after their column separator line (two
//! or more runs of dashes) and stop at the first blank line. Everything
//! else is kept as `Unknown` sections.

use crate::elements;
use crate::error::{Error, Result};
use crate::extchem::{
    atom_from_element, Calculation, CalculationResults, CalculationSetup, ExtChemDocument, IdRef,
    Molecule, PropertyRecord, PropertyTarget, PropertyValue, SetupEntry,
};
use crate::ops::hill_formula;
use crate::units::{Quantity, Units};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    GeometryBlock,
    ScfSummary,
    MultipoleBlock,
    FrequencyBlock,
    TaskBoundary,
    Unknown,
}

/// A run of lines `start..end` (0-based, end exclusive).
#[derive(Debug, Clone, PartialEq)]
pub struct LogSection<'a> {
    pub kind: SectionKind,
    pub start: usize,
    pub end: usize,
    pub lines: Vec<&'a str>,
}

impl LogSection<'_> {
    /// 1-based line number of the `offset`-th line of the section.
    fn line_number(&self, offset: usize) -> usize {
        self.start + offset + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryAtom {
    pub symbol: &'static str,
    pub coords: [f64; 3],
    pub units: Units,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScfSummary {
    pub charge: Option<i64>,
    pub multiplicity: Option<u32>,
    pub wave_function_type: Option<String>,
    pub theory: Option<String>,
    pub input_vectors: Option<String>,
    pub output_vectors: Option<String>,
    pub energy: Option<Quantity>,
}

/// Everything extracted from one task group.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParsedTask {
    pub geometry: Vec<GeometryAtom>,
    pub scf: Option<ScfSummary>,
    pub dipole: Option<Quantity>,
    pub quadrupole: Vec<(String, Quantity)>,
    pub frequencies: Vec<Quantity>,
}

impl ParsedTask {
    fn is_empty(&self) -> bool {
        self.geometry.is_empty()
            && self.scf.is_none()
            && self.dipole.is_none()
            && self.frequencies.is_empty()
    }
}

const PREAMBLE_LIMIT: usize = 10;

/// A finite float; `nan` and `inf` are not accepted as log values.
fn finite(text: &str) -> Option<f64> {
    text.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn is_blank(line: &str) -> bool {
    line.trim().is_empty()
}

/// `---- ------- ----`: only dashes, bars and spaces, with at least two
/// separate runs of dashes.
fn is_table_separator(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty()
        && t.chars().all(|c| c == '-' || c == '|' || c == ' ')
        && t.split(|c| c != '-').filter(|run| !run.is_empty()).count() >= 2
}

fn is_module_banner(line: &str) -> bool {
    let t = line.trim();
    t.starts_with("NWChem ") && t.ends_with(" Module")
}

fn header_kind(lines: &[&str], i: usize) -> Option<SectionKind> {
    let t = lines[i].trim();
    if t.starts_with("Task  times") {
        Some(SectionKind::TaskBoundary)
    } else if t == "NWChem SCF Module" || t == "NWChem DFT Module" {
        Some(SectionKind::ScfSummary)
    } else if t.starts_with("Multipole moments") {
        Some(SectionKind::MultipoleBlock)
    } else if t.contains("Normal Eigenvalue") {
        Some(SectionKind::FrequencyBlock)
    } else if t.starts_with("Geometry")
        && lines[i + 1..]
            .iter()
            .take(PREAMBLE_LIMIT)
            .take_while(|l| !is_table_separator(l))
            .any(|l| l.contains("Output coordinates in"))
    {
        Some(SectionKind::GeometryBlock)
    } else {
        None
    }
}

fn table_end(lines: &[&str], header: usize) -> usize {
    let mut seen_separator = false;
    let mut j = header + 1;
    while j < lines.len() {
        if header_kind(lines, j).is_some() {
            return j;
        }
        if seen_separator {
            if is_blank(lines[j]) {
                return j;
            }
        } else if is_table_separator(lines[j]) {
            seen_separator = true;
        } else if j - header > PREAMBLE_LIMIT {
            return j;
        }
        j += 1;
    }
    j
}

fn summary_end(lines: &[&str], header: usize) -> usize {
    (header + 1..lines.len())
        .find(|&j| header_kind(lines, j).is_some() || is_module_banner(lines[j]))
        .unwrap_or(lines.len())
}

fn flush_unknown<'a>(sections: &mut Vec<LogSection<'a>>, from: Option<usize>, to: usize, lines: &[&'a str]) {
    if let Some(s) = from {
        sections.push(LogSection {
            kind: SectionKind::Unknown,
            start: s,
            end: to,
            lines: lines[s..to].to_vec(),
        });
    }
}

/// Cuts the log into consecutive sections covering every line.
pub fn segment(log: &str) -> Vec<LogSection<'_>> {
    let lines: Vec<&str> = log.lines().collect();
    let mut sections = Vec::new();
    let mut unknown_start: Option<usize> = None;
    let mut i = 0;

    while i < lines.len() {
        let Some(kind) = header_kind(&lines, i) else {
            unknown_start.get_or_insert(i);
            i += 1;
            continue;
        };
        flush_unknown(&mut sections, unknown_start.take(), i, &lines);
        let end = match kind {
            SectionKind::TaskBoundary => i + 1,
            SectionKind::ScfSummary => summary_end(&lines, i),
            _ => table_end(&lines, i),
        };
        sections.push(LogSection {
            kind,
            start: i,
            end,
            lines: lines[i..end].to_vec(),
        });
        i = end;
    }
    flush_unknown(&mut sections, unknown_start, lines.len(), &lines);
    sections
}

/// Groups sections into tasks, each closed by a `Task  times` line.
/// Trailing content with no recognized section joins the last task.
pub fn split_tasks(log: &str) -> Vec<Vec<LogSection<'_>>> {
    let mut groups: Vec<Vec<LogSection<'_>>> = Vec::new();
    let mut current = Vec::new();
    for section in segment(log) {
        let closes = section.kind == SectionKind::TaskBoundary;
        current.push(section);
        if closes {
            groups.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        let recognized = current.iter().any(|s| s.kind != SectionKind::Unknown);
        match groups.last_mut() {
            Some(last) if !recognized => last.extend(current),
            _ => groups.push(current),
        }
    }
    groups
}

/// Rows after the column separator, with their offsets in the section.
fn table_rows<'s, 'a>(section: &'s LogSection<'a>) -> impl Iterator<Item = (usize, &'a str)> + 's {
    let first = section
        .lines
        .iter()
        .position(|l| is_table_separator(l))
        .map_or(section.lines.len(), |p| p + 1);
    section.lines[first..]
        .iter()
        .enumerate()
        .map(move |(k, l)| (first + k, *l))
        .filter(|(_, l)| !is_blank(l) && !is_table_separator(l))
}

fn geometry_units(section: &LogSection<'_>) -> Result<Units> {
    let (offset, line) = section
        .lines
        .iter()
        .enumerate()
        .find(|(_, l)| l.contains("Output coordinates in"))
        .ok_or(Error::MissingField("Output coordinates header".into()))?;
    let rest = line.split("Output coordinates in").nth(1).unwrap_or("").trim_start();
    let word = rest.split_whitespace().next().unwrap_or("");
    match word.to_ascii_lowercase().as_str() {
        "angstroms" | "angstrom" => Ok(Units::Angstrom),
        "a.u." | "bohr" | "bohrs" => Ok(Units::Bohr),
        other => Err(Error::RowParse {
            line: section.line_number(offset),
            message: format!("unsupported coordinate units {other:?}"),
        }),
    }
}

fn symbol_from_tag(tag: &str) -> Option<&'static str> {
    let letters: String = tag.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    elements::normalize_symbol(&letters)
}

/// Atom rows of a geometry table: `index tag charge x y z`.
pub fn parse_geometry_block(section: &LogSection<'_>) -> Result<Vec<GeometryAtom>> {
    let units = geometry_units(section)?;
    let mut atoms = Vec::new();
    for (offset, row) in table_rows(section) {
        let line = section.line_number(offset);
        let cols: Vec<&str> = row.split_whitespace().collect();
        if cols.len() != 6 {
            return Err(Error::RowParse {
                line,
                message: format!("expected 6 columns, found {}", cols.len()),
            });
        }
        let symbol = symbol_from_tag(cols[1]).ok_or_else(|| Error::RowParse {
            line,
            message: format!("unknown atom tag {:?}", cols[1]),
        })?;
        let mut coords = [0.0; 3];
        for (c, text) in coords.iter_mut().zip(&cols[3..6]) {
            *c = finite(text).ok_or_else(|| Error::RowParse {
                line,
                message: format!("non-numeric coordinate {text:?}"),
            })?;
        }
        atoms.push(GeometryAtom { symbol, coords, units });
    }
    Ok(atoms)
}

/// Dipole total moment and named quadrupole components.
pub fn parse_multipole_block(section: &LogSection<'_>) -> Result<(Quantity, Vec<(String, Quantity)>)> {
    let header = section.lines.first().copied().unwrap_or("");
    let units = if header.to_ascii_lowercase().contains("debye") {
        Units::Debye
    } else {
        Units::AtomicUnits
    };
    let mut dipole = None;
    let mut quadrupole = Vec::new();
    for (_, row) in table_rows(section) {
        let cols: Vec<&str> = row.split_whitespace().collect();
        let (kind, component, value) = match cols.as_slice() {
            [k, c, v] => (*k, *c, *v),
            [k, c, ..] => (*k, *c, ""),
            _ => continue,
        };
        match kind {
            "Dipole" if component == "total" => {
                let v = finite(value).ok_or_else(|| Error::MissingField("dipole totalMoment".into()))?;
                dipole = Some(Quantity::scalar(v, units));
            }
            "Quadrupole" => {
                let v = finite(value).ok_or_else(|| Error::MissingField(format!("quadrupole {component}")))?;
                quadrupole.push((component.to_string(), Quantity::scalar(v, units)));
            }
            _ => {}
        }
    }
    let dipole = dipole.ok_or_else(|| Error::MissingField("dipole totalMoment".into()))?;
    Ok((dipole, quadrupole))
}

/// Mode frequencies in file order, cm-1. Imaginary modes are printed, and
/// kept, as negative numbers.
pub fn parse_frequency_block(section: &LogSection<'_>) -> Result<Vec<Quantity>> {
    let mut out = Vec::new();
    for (offset, row) in table_rows(section) {
        let mut cols = row.split_whitespace();
        let Some(mode) = cols.next() else { continue };
        if mode.parse::<u32>().is_err() {
            continue;
        }
        let text = cols.next().unwrap_or("");
        let value = finite(text).ok_or_else(|| Error::RowParse {
            line: section.line_number(offset),
            message: format!("non-numeric frequency {text:?}"),
        })?;
        out.push(Quantity::scalar(value, Units::Wavenumber));
    }
    Ok(out)
}

fn parse_scf_summary(section: &LogSection<'_>) -> Result<ScfSummary> {
    let mut summary = ScfSummary {
        theory: Some(if section.lines[0].contains("DFT") { "DFT" } else { "Hartree-Fock" }.into()),
        ..Default::default()
    };
    let mut open_shells = None;
    for (offset, line) in section.lines.iter().enumerate().skip(1) {
        let Some((key, value)) = line.split_once('=').or_else(|| line.split_once(':')) else {
            continue;
        };
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        let bad = |what: &str| Error::RowParse {
            line: section.line_number(offset),
            message: format!("bad {what} {value:?}"),
        };
        match key.as_str() {
            "charge" => {
                let c = finite(value).ok_or_else(|| bad("charge"))?;
                summary.charge = Some(c.round() as i64);
            }
            "open shells" => open_shells = Some(value.parse::<u32>().map_err(|_| bad("open shell count"))?),
            "spin multiplicity" | "multiplicity" => {
                let m = value.parse::<u32>().ok().filter(|&m| m >= 1);
                summary.multiplicity = Some(m.ok_or_else(|| bad("multiplicity"))?)
            }
            "wavefunction" => summary.wave_function_type = Some(value.to_string()),
            "input vectors" => summary.input_vectors = Some(value.to_string()),
            "output vectors" => summary.output_vectors = Some(value.to_string()),
            "total scf energy" | "total dft energy" => {
                let e = finite(value).ok_or_else(|| bad("energy"))?;
                summary.energy = Some(Quantity::scalar(e, Units::AtomicUnits));
            }
            _ => {}
        }
    }
    if summary.multiplicity.is_none() {
        summary.multiplicity = open_shells.map(|n| n + 1);
    }
    Ok(summary)
}

/// Reads the last block of each kind in a task group.
pub fn parse_task(group: &[LogSection<'_>]) -> Result<ParsedTask> {
    let mut task = ParsedTask::default();
    for section in group {
        match section.kind {
            SectionKind::GeometryBlock => task.geometry = parse_geometry_block(section)?,
            SectionKind::ScfSummary => task.scf = Some(parse_scf_summary(section)?),
            SectionKind::MultipoleBlock => {
                let (d, q) = parse_multipole_block(section)?;
                task.dipole = Some(d);
                task.quadrupole = q;
            }
            SectionKind::FrequencyBlock => task.frequencies = parse_frequency_block(section)?,
            SectionKind::TaskBoundary | SectionKind::Unknown => {}
        }
    }
    Ok(task)
}

fn calculation_type(task: &ParsedTask) -> &'static str {
    if !task.frequencies.is_empty() {
        "vibrationalModes"
    } else if task.dipole.is_some() {
        "molecularProperties"
    } else if task.scf.is_some() {
        "energyCalculation"
    } else {
        "geometry"
    }
}

/// Converts a whole log. Task `n` (counting from 1) becomes `calculation.n`
/// with setup `calculationSetup.n`; a task that prints a geometry defines
/// `Molecule.n`, otherwise it refers back to the latest molecule.
pub fn parse_log(log: &str) -> Result<ExtChemDocument> {
    let groups = split_tasks(log);
    if !groups
        .iter()
        .flatten()
        .any(|s| !matches!(s.kind, SectionKind::Unknown | SectionKind::TaskBoundary))
    {
        return Err(Error::EmptyLog);
    }

    let mut doc = ExtChemDocument::default();
    let mut current: Option<usize> = None;
    let mut n = 0;
    for group in &groups {
        let task = parse_task(group)?;
        if task.is_empty() {
            continue;
        }
        n += 1;

        if !task.geometry.is_empty() {
            let atoms = task
                .geometry
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    let z = elements::number_from_symbol(a.symbol).expect("normalized symbol");
                    atom_from_element(
                        format!("Atom.{}.Mol.{n}", k + 1),
                        z,
                        Quantity::vector(a.coords.to_vec(), a.units),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            doc.molecules.push(Molecule {
                id: format!("Molecule.{n}"),
                atoms,
                ..Default::default()
            });
            current = Some(doc.molecules.len() - 1);
        }
        let molecule = &doc.molecules[current.ok_or(Error::MissingField("geometry".into()))?];
        let numbers = molecule.element_numbers();
        let molecule_ref = IdRef(molecule.id.clone());

        let scf = task.scf.clone().unwrap_or_default();
        let charge = scf.charge.unwrap_or(0);
        let electrons = numbers.iter().map(|&z| z as i64).sum::<i64>() - charge;
        let setup = CalculationSetup {
            id: format!("calculationSetup.{n}"),
            molecule: molecule_ref.clone(),
            charge,
            multiplicity: scf.multiplicity.unwrap_or(1),
            number_of_electrons: u64::try_from(electrons)
                .map_err(|_| Error::MissingField("charge".into()))?,
            wave_function_type: scf.wave_function_type,
            wave_function_theory: scf.theory,
            basis_set: None,
            input_vectors: scf.input_vectors,
            output_vectors: scf.output_vectors,
            extra: Default::default(),
        };

        let mut record = PropertyRecord {
            target: Some(PropertyTarget::Molecule(molecule_ref)),
            properties: Vec::new(),
        };
        if let Some(e) = scf.energy {
            record.properties.push(("totalEnergy".into(), PropertyValue::Quantity(e)));
        }
        if let Some(d) = &task.dipole {
            record.properties.push((
                "dipoleMoment".into(),
                PropertyValue::Group(vec![("totalMoment".into(), d.clone())]),
            ));
            if !task.quadrupole.is_empty() {
                record
                    .properties
                    .push(("quadrupoleMoment".into(), PropertyValue::Group(task.quadrupole.clone())));
            }
        }
        let has_record = !record.properties.is_empty();
        let results = (has_record || !task.frequencies.is_empty()).then(|| CalculationResults {
            molecular_properties: if has_record { vec![record] } else { Vec::new() },
            vibrational_frequencies: (!task.frequencies.is_empty()).then(|| task.frequencies.clone()),
            extra: Default::default(),
        });

        doc.calculations.push(Calculation {
            calculation_type: calculation_type(&task).into(),
            molecular_formula: hill_formula(&numbers)?,
            id: format!("calculation.{n}"),
            setup: SetupEntry::Inline(setup),
            results,
            extra: Default::default(),
        });
    }
    if doc.calculations.is_empty() {
        return Err(Error::EmptyLog);
    }
    Ok(doc)
}

/// Parses many logs, in parallel when the feature is enabled. Results keep
/// input order.
pub fn parse_logs<S: AsRef<str> + Sync>(logs: &[S]) -> Vec<Result<ExtChemDocument>> {
    crate::par::map(logs, |log| parse_log(log.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GEOMETRY: &str = r#"
 Geometry "geometry" -> ""
 -------------------------

 Output coordinates in angstroms (scale by  1.889725989 to convert to a.u.)

  No.       Tag          Charge          X              Y              Z
 ---- ---------------- ---------- -------------- -------------- --------------
    1 O                    8.0000     0.00000000     0.00000000     0.11146380
    2 H                    1.0000    -0.97432154     0.00000000    -0.44585539
    3 H                    1.0000     0.97432154     0.00000000    -0.44585539

      Atomic Mass
"#;

    fn only(kind: SectionKind, log: &str) -> LogSection<'_> {
        segment(log).into_iter().find(|s| s.kind == kind).expect("section present")
    }

    #[test]
    fn separator_detection() {
        assert!(is_table_separator(" ---- ------ ----"));
        assert!(is_table_separator(" ------ ---------- || --------------"));
        assert!(!is_table_separator(" -------------------------"));
        assert!(!is_table_separator(""));
    }

    #[test]
    fn geometry_rows() {
        let s = only(SectionKind::GeometryBlock, GEOMETRY);
        let atoms = parse_geometry_block(&s).unwrap();
        assert_eq!(atoms.len(), 3);
        assert_eq!(atoms[0].symbol, "O");
        assert_eq!(atoms[0].coords, [0.0, 0.0, 0.1114638]);
        assert_eq!(atoms[2].units, Units::Angstrom);
        // the block stops at the blank line after the rows
        assert_eq!(s.lines.last().unwrap().split_whitespace().next(), Some("3"));
    }

    #[test]
    fn empty_geometry_block() {
        let log = GEOMETRY
            .lines()
            .filter(|l| !l.trim_start().starts_with(['1', '2', '3']))
            .collect::<Vec<_>>()
            .join("\n");
        let s = only(SectionKind::GeometryBlock, &log);
        assert!(parse_geometry_block(&s).unwrap().is_empty());
    }

    #[test]
    fn bad_coordinate_reports_line() {
        let log = GEOMETRY.replace("-0.97432154", "-0.97x32154");
        let s = only(SectionKind::GeometryBlock, &log);
        match parse_geometry_block(&s) {
            Err(Error::RowParse { line, .. }) => {
                assert_eq!(line, 10);
                assert!(log.lines().nth(line - 1).unwrap().contains("-0.97x32154"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bohr_geometry() {
        let log = GEOMETRY.replace("angstroms", "a.u.");
        let s = only(SectionKind::GeometryBlock, &log);
        assert_eq!(parse_geometry_block(&s).unwrap()[0].units, Units::Bohr);
    }

    const MULTIPOLE: &str = r#"
 Multipole moments (atomic units)
 --------------------------------

   Moment      Component                  Value
   ----------  ------------------------  ----------------
   Dipole      X                          0.0000000000
   Dipole      total                      0.8052087008
   Quadrupole  diamagneticSusceptibility  18.596483
   Quadrupole  momentXZ                   0.0
"#;

    #[test]
    fn multipole_values() {
        let s = only(SectionKind::MultipoleBlock, MULTIPOLE);
        let (d, q) = parse_multipole_block(&s).unwrap();
        assert_eq!(d, Quantity::scalar(0.8052087008, Units::AtomicUnits));
        assert_eq!(q.len(), 2);
        assert_eq!(q[0].0, "diamagneticSusceptibility");
        assert_eq!(q[0].1.value.as_scalar(), Some(18.596483));
    }

    #[test]
    fn multipole_dipole_only_and_malformed() {
        let log: String = MULTIPOLE
            .lines()
            .filter(|l| !l.contains("Quadrupole"))
            .map(|l| format!("{l}\n"))
            .collect();
        let (_, q) = parse_multipole_block(&only(SectionKind::MultipoleBlock, &log)).unwrap();
        assert!(q.is_empty());

        let log = MULTIPOLE.replace("18.596483", "18.59x");
        match parse_multipole_block(&only(SectionKind::MultipoleBlock, &log)) {
            Err(Error::MissingField(f)) => assert!(f.contains("diamagneticSusceptibility")),
            other => panic!("unexpected {other:?}"),
        }
    }

    const FREQ: &str = r#"
 Normal Eigenvalue ||    Projected Infra Red Intensities
  Mode   [cm**-1]  || [atomic units] [(debye/angs)**2] [(KM/mol)] [arbitrary]
 ------ ---------- || -------------- ----------------- ---------- -----------
    1     -120.330 ||    0.000012           0.000         0.012       0.001
    2     1709.410 ||    0.062149           1.434        60.585       3.451
    3     3998.980 ||    0.001009           0.023         0.984       0.056
 ------ ---------- || -------------- ----------------- ---------- -----------
"#;

    #[test]
    fn frequencies() {
        let f = parse_frequency_block(&only(SectionKind::FrequencyBlock, FREQ)).unwrap();
        let values: Vec<_> = f.iter().map(|q| q.value.as_scalar().unwrap()).collect();
        assert_eq!(values, [-120.33, 1709.41, 3998.98]);
        assert!(f.iter().all(|q| q.units == Units::Wavenumber));
    }

    #[test]
    fn empty_and_bad_frequency_block() {
        let log: String = FREQ
            .lines()
            .filter(|l| !l.trim_start().starts_with(['1', '2', '3']))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(parse_frequency_block(&only(SectionKind::FrequencyBlock, &log)).unwrap().is_empty());
        let log = FREQ.replace("1709.410", "17o9.410");
        assert!(matches!(
            parse_frequency_block(&only(SectionKind::FrequencyBlock, &log)),
            Err(Error::RowParse { line: 6, .. })
        ));
    }

    #[test]
    fn segmentation_is_lossless() {
        let log = format!("{GEOMETRY}{MULTIPOLE}\n Task  times  cpu: 1.0s\n{FREQ}trailer\n");
        let sections = segment(&log);
        let covered: usize = sections.iter().map(|s| s.end - s.start).sum();
        assert_eq!(covered, log.lines().count());
        for pair in sections.windows(2) {
            assert_eq!(pair[0].end, pair[1].start);
        }
        assert_eq!(split_tasks(&log).len(), 2);
    }

    #[test]
    fn task_splitting_edge_cases() {
        assert!(split_tasks("").is_empty());
        assert_eq!(split_tasks(GEOMETRY).len(), 1);
        let garbage = split_tasks("hello\nworld\n");
        assert_eq!(garbage.len(), 1);
        assert_eq!(garbage[0][0].kind, SectionKind::Unknown);
        assert!(matches!(parse_log("hello\nworld\n"), Err(Error::EmptyLog)));
        assert!(matches!(parse_log(""), Err(Error::EmptyLog)));
    }

    #[test]
    fn results_without_geometry_fail() {
        assert!(matches!(parse_log(MULTIPOLE), Err(Error::MissingField(f)) if f == "geometry"));
    }
}
