// SPDX-License-Identifier: Apache-2.0

use std::fs;

use chemdata::parse_document;
use chemdata_server::service::Service;
use chemdata_server::{FsStore, MoleculeStore};
use std::sync::Arc;

const WATER_CJSON: &str = include_str!("../../core/tests/fixtures/paper/water.cjson");

fn ingest(dir: &std::path::Path, body: &str) -> String {
    let (store, _) = FsStore::open(dir).unwrap();
    Service::new(Arc::new(store)).ingest(body, None).unwrap().id
}

#[test]
fn leftovers_from_interrupted_writes_are_cleaned() {
    let dir = tempfile::tempdir().unwrap();
    let id = ingest(dir.path(), WATER_CJSON);

    // a half-written record and a half-written index, as a crash would leave
    fs::write(dir.path().join("tmp").join(format!("{}.123.0.tmp", "ab".repeat(32))), "{\"id\": \"ab").unwrap();
    fs::write(dir.path().join("index.json"), "{\"entries\": [").unwrap();

    let (store, report) = FsStore::open(dir.path()).unwrap();
    assert_eq!(report.removed_temp_files, 1);
    assert!(report.rebuilt);
    assert_eq!(report.records, 1);
    assert!(report.quarantined.is_empty());
    assert_eq!(fs::read_dir(dir.path().join("tmp")).unwrap().count(), 0);
    assert!(store.get(&id).unwrap().is_some());
    assert_eq!(store.entries().len(), 1);
}

#[test]
fn object_without_index_entry_is_recovered() {
    let dir = tempfile::tempdir().unwrap();
    let id = ingest(dir.path(), WATER_CJSON);
    // crash after the rename but before the index was rewritten
    fs::write(dir.path().join("index.json"), "{\"entries\": []}").unwrap();
    let (store, report) = FsStore::open(dir.path()).unwrap();
    assert!(report.rebuilt);
    assert_eq!(store.entries()[0].id, id);
}

#[test]
fn tampered_object_is_quarantined() {
    let dir = tempfile::tempdir().unwrap();
    let id = ingest(dir.path(), WATER_CJSON);
    let path = dir.path().join("objects").join(format!("{id}.json"));
    let text = fs::read_to_string(&path).unwrap().replace("0.14", "0.15");
    fs::write(&path, text).unwrap();
    fs::remove_file(dir.path().join("index.json")).unwrap();

    let (store, report) = FsStore::open(dir.path()).unwrap();
    assert_eq!(report.quarantined, [id.as_str()]);
    assert!(store.get(&id).unwrap().is_none());
    assert!(dir.path().join("quarantine").join(format!("{id}.json")).exists());
}

#[test]
fn concurrent_ingest_of_same_content() {
    let dir = tempfile::tempdir().unwrap();
    let (store, _) = FsStore::open(dir.path()).unwrap();
    let service = Arc::new(Service::new(Arc::new(store)));
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let s = service.clone();
            std::thread::spawn(move || s.ingest(WATER_CJSON, None).unwrap())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(results.iter().filter(|r| r.created).count(), 1);
    assert!(results.windows(2).all(|w| w[0].id == w[1].id));
    let doc = parse_document(WATER_CJSON, None).unwrap();
    assert_eq!(results[0].id, chemdata_server::content_id(&doc.canonical_text().unwrap()));
}
