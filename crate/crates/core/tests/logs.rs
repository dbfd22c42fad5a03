// SPDX-License-Identifier: Apache-2.0

mod common;

use chemdata::nwparse::{parse_logs, segment, SectionKind};
use chemdata::{parse_log, serialize_extchem, split_tasks, validate_extchem, validate_references, Error};
use common::{fixture, rng};
use rand::Rng;

const LOGS: [&str; 4] = ["water-sp", "water-two-task", "water-no-marker", "water-freq"];

#[test]
fn fixtures_match_goldens() {
    for name in LOGS {
        let doc = parse_log(&fixture(&format!("logs/{name}.out"))).unwrap();
        assert!(validate_extchem(&doc).is_empty(), "{name}: {:?}", validate_extchem(&doc));
        assert!(validate_references(&doc).is_empty());
        let text = serialize_extchem(&doc).unwrap();
        assert_eq!(text, fixture(&format!("logs/{name}.golden.json")), "{name}");
    }
}

#[test]
fn task_counts() {
    assert_eq!(split_tasks(&fixture("logs/water-two-task.out")).len(), 2);
    assert_eq!(split_tasks(&fixture("logs/water-no-marker.out")).len(), 1);
    assert_eq!(split_tasks(&fixture("logs/water-sp.out")).len(), 1);

    let doc = parse_log(&fixture("logs/water-two-task.out")).unwrap();
    assert_eq!(doc.calculations.len(), 2);
    assert_eq!(doc.calculations[1].inline_setup().unwrap().molecule.as_str(), "Molecule.2");
}

#[test]
fn single_point_carries_paper_values() {
    let doc = parse_log(&fixture("logs/water-sp.out")).unwrap();
    let record = &doc.calculations[0].results.as_ref().unwrap().molecular_properties[0];
    assert_eq!(record.dipole_total().unwrap().value.as_scalar(), Some(0.8052087008));
    let chi = record.quantity("quadrupoleMoment", Some("diamagneticSusceptibility")).unwrap();
    assert_eq!(chi.value.as_scalar(), Some(18.596483));
}

#[test]
fn frequencies_keep_imaginary_mode() {
    let doc = parse_log(&fixture("logs/water-freq.out")).unwrap();
    let f = doc.calculations[0].results.as_ref().unwrap().vibrational_frequencies.as_ref().unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(f[0].value.as_scalar(), Some(-120.33));
}

#[test]
fn segmentation_covers_every_line() {
    for name in LOGS {
        let log = fixture(&format!("logs/{name}.out"));
        let sections = segment(&log);
        assert_eq!(sections.first().map_or(0, |s| s.start), 0);
        assert_eq!(sections.last().unwrap().end, log.lines().count());
        for w in sections.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        let rebuilt: Vec<&str> = sections.iter().flat_map(|s| s.lines.iter().copied()).collect();
        assert_eq!(rebuilt, log.lines().collect::<Vec<_>>());
        let grouped: usize = split_tasks(&log).iter().flatten().map(|s| s.lines.len()).sum();
        assert_eq!(grouped, log.lines().count());
    }
}

#[test]
fn recognised_sections() {
    let kinds: Vec<_> = segment(&fixture("logs/water-sp.out"))
        .into_iter()
        .map(|s| s.kind)
        .filter(|k| *k != SectionKind::Unknown)
        .collect();
    assert_eq!(
        kinds,
        [
            SectionKind::GeometryBlock,
            SectionKind::ScfSummary,
            SectionKind::MultipoleBlock,
            SectionKind::TaskBoundary,
        ]
    );
}

#[test]
fn output_is_deterministic() {
    for name in LOGS {
        let log = fixture(&format!("logs/{name}.out"));
        let a = serialize_extchem(&parse_log(&log).unwrap()).unwrap();
        let b = serialize_extchem(&parse_log(&log.clone()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn batch_parse_keeps_order() {
    let logs: Vec<String> = LOGS.iter().map(|n| fixture(&format!("logs/{n}.out"))).collect();
    let batch = parse_logs(&logs);
    for (log, result) in logs.iter().zip(batch) {
        assert_eq!(result.unwrap(), parse_log(log).unwrap());
    }
}

#[test]
fn garbage_is_empty_log() {
    assert!(matches!(parse_log("lorem ipsum\n\ndolor\n"), Err(Error::EmptyLog)));
}

/// Line-level mutations (drops, duplicates, swaps, character noise) either
/// fail with an error or still produce a valid, linked document.
#[test]
fn mutated_logs_never_emit_invalid_documents() {
    let mut r = rng(42);
    let mut produced = 0;
    for round in 0..400 {
        let base = fixture(&format!("logs/{}.out", LOGS[round % LOGS.len()]));
        let mut lines: Vec<String> = base.lines().map(str::to_string).collect();
        for _ in 0..r.random_range(1..6) {
            let i = r.random_range(0..lines.len());
            match r.random_range(0..4) {
                0 => {
                    lines.remove(i);
                }
                1 => {
                    let l = lines[i].clone();
                    lines.insert(i, l);
                }
                2 => {
                    let j = r.random_range(0..lines.len());
                    lines.swap(i, j);
                }
                _ => {
                    let mut chars: Vec<char> = lines[i].chars().collect();
                    if !chars.is_empty() {
                        let k = r.random_range(0..chars.len());
                        chars[k] = ['x', '-', '.', ' ', '9', '='][r.random_range(0..6)];
                    }
                    lines[i] = chars.into_iter().collect();
                }
            }
            if lines.is_empty() {
                break;
            }
        }
        let log = lines.join("\n");
        if let Ok(doc) = parse_log(&log) {
            produced += 1;
            assert!(validate_extchem(&doc).is_empty(), "round {round}: {:?}", validate_extchem(&doc));
            let text = serialize_extchem(&doc).unwrap();
            assert_eq!(serialize_extchem(&parse_log(&log).unwrap()).unwrap(), text);
        }
    }
    assert!(produced > 100);
}
