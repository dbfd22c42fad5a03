// SPDX-License-Identifier: Apache-2.0

//! Content-addressed document store on the local filesystem.
//!
//! Layout under the root directory:
//!
//! ```text
//! objects/<id>.json   one record per molecule, never modified after creation
//! index.json          summary of every record; rebuilt from objects/ when stale
//! tmp/                staging area; records are renamed into objects/ whole
//! quarantine/         records that failed verification on startup
//! ```
//!
//! A record only becomes visible through the rename into `objects/`, so an
//! interrupted write leaves at most a stray file in `tmp/`, which is removed
//! on the next open.

use std::collections::{HashMap, HashSet};
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use chemdata::{parse_document, Format};
use chrono::{DateTime, Utc};
use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::metadata::{extract_metadata, Metadata};

/// Hex SHA-256 of the canonical document text.
pub fn content_id(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn is_valid_id(id: &str) -> bool {
    id.len() == 64 && id.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
}

mod format_name {
    use chemdata::Format;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Format, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(f.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Format, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// Everything known about a stored molecule except the document itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Entry {
    pub id: String,
    #[serde(with = "format_name")]
    pub source_format: Format,
    pub created_at: DateTime<Utc>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StoredMolecule {
    #[serde(flatten)]
    pub entry: Entry,
    /// Canonical text in the source format.
    pub document: String,
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("storage I/O failed: {0}")]
    Io(#[from] io::Error),
    #[error("stored record {id} is unreadable: {reason}")]
    Corrupt { id: String, reason: String },
}

/// What opening the store found and repaired.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpenReport {
    pub records: usize,
    /// The index file was missing, unreadable or out of date.
    pub rebuilt: bool,
    pub removed_temp_files: usize,
    pub quarantined: Vec<String>,
}

/// Storage interface used by the service; [`FsStore`] is the provided
/// implementation.
pub trait MoleculeStore: Send + Sync {
    /// Stores the record unless its id is already present. Returns the entry
    /// now in the store and whether this call created it.
    fn insert(&self, record: StoredMolecule) -> Result<(Entry, bool), StoreError>;
    fn get(&self, id: &str) -> Result<Option<StoredMolecule>, StoreError>;
    fn entries(&self) -> Vec<Entry>;
    fn remove(&self, id: &str) -> Result<bool, StoreError>;
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    entries: Vec<Entry>,
}

pub struct FsStore {
    root: PathBuf,
    index: RwLock<HashMap<String, Entry>>,
    /// Serializes commits: object rename plus index rewrite.
    writer: Mutex<()>,
    temp_counter: AtomicU64,
}

impl FsStore {
    pub fn open(root: impl Into<PathBuf>) -> Result<(Self, OpenReport), StoreError> {
        let root = root.into();
        for dir in ["objects", "tmp", "quarantine"] {
            fs::create_dir_all(root.join(dir))?;
        }
        let mut report = OpenReport::default();

        for entry in fs::read_dir(root.join("tmp"))? {
            let path = entry?.path();
            if path.is_file() {
                fs::remove_file(&path)?;
                report.removed_temp_files += 1;
            }
        }

        let on_disk = object_ids(&root.join("objects"))?;
        let index = match load_index(&root.join("index.json")) {
            Some(entries) if entries.keys().collect::<HashSet<_>>() == on_disk.iter().collect() => entries,
            _ => {
                report.rebuilt = true;
                rebuild(&root, on_disk, &mut report)?
            }
        };
        report.records = index.len();

        let store = Self {
            root,
            index: RwLock::new(index),
            writer: Mutex::new(()),
            temp_counter: AtomicU64::new(0),
        };
        if report.rebuilt {
            store.write_index()?;
        }
        Ok((store, report))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn object_path(&self, id: &str) -> PathBuf {
        self.root.join("objects").join(format!("{id}.json"))
    }

    fn temp_path(&self, stem: &str) -> PathBuf {
        let n = self.temp_counter.fetch_add(1, Ordering::Relaxed);
        self.root
            .join("tmp")
            .join(format!("{stem}.{}.{n}.tmp", std::process::id()))
    }

    /// Writes `bytes` to a staging file and renames it over `target`.
    fn write_atomic(&self, target: &Path, stem: &str, bytes: &[u8]) -> io::Result<()> {
        let temp = self.temp_path(stem);
        let result = (|| {
            let mut f = File::create(&temp)?;
            f.write_all(bytes)?;
            f.sync_all()?;
            fs::rename(&temp, target)?;
            sync_dir(target.parent().unwrap_or(&self.root))
        })();
        if result.is_err() {
            let _ = fs::remove_file(&temp);
        }
        result
    }

    fn write_index(&self) -> io::Result<()> {
        let mut entries: Vec<Entry> = self.index.read().values().cloned().collect();
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let text = serde_json::to_vec_pretty(&IndexFile { entries }).map_err(io::Error::other)?;
        self.write_atomic(&self.root.join("index.json"), "index", &text)
    }
}

impl MoleculeStore for FsStore {
    fn insert(&self, record: StoredMolecule) -> Result<(Entry, bool), StoreError> {
        let _commit = self.writer.lock();
        if let Some(existing) = self.index.read().get(&record.entry.id) {
            return Ok((existing.clone(), false));
        }
        let bytes = serde_json::to_vec_pretty(&record).map_err(io::Error::other)?;
        let id = record.entry.id.clone();
        self.write_atomic(&self.object_path(&id), &id, &bytes)?;
        self.index.write().insert(id, record.entry.clone());
        self.write_index()?;
        Ok((record.entry, true))
    }

    fn get(&self, id: &str) -> Result<Option<StoredMolecule>, StoreError> {
        if !is_valid_id(id) || !self.index.read().contains_key(id) {
            return Ok(None);
        }
        // object files are immutable, so no lock is needed to read one
        match fs::read(self.object_path(id)) {
            Ok(bytes) => serde_json::from_slice(&bytes).map(Some).map_err(|e| StoreError::Corrupt {
                id: id.to_string(),
                reason: e.to_string(),
            }),
            // deleted between the index check and the read
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn entries(&self) -> Vec<Entry> {
        self.index.read().values().cloned().collect()
    }

    fn remove(&self, id: &str) -> Result<bool, StoreError> {
        let _commit = self.writer.lock();
        if self.index.write().remove(id).is_none() {
            return Ok(false);
        }
        match fs::remove_file(self.object_path(id)) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        sync_dir(&self.root.join("objects"))?;
        self.write_index()?;
        Ok(true)
    }
}

fn object_ids(dir: &Path) -> io::Result<Vec<String>> {
    let mut ids = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if let Some(stem) = path
            .extension()
            .filter(|e| *e == "json")
            .and_then(|_| path.file_stem())
            .and_then(|s| s.to_str())
        {
            ids.push(stem.to_string());
        }
    }
    ids.sort();
    Ok(ids)
}

fn load_index(path: &Path) -> Option<HashMap<String, Entry>> {
    let bytes = fs::read(path).ok()?;
    let file: IndexFile = serde_json::from_slice(&bytes).ok()?;
    Some(file.entries.into_iter().map(|e| (e.id.clone(), e)).collect())
}

/// Re-reads and re-verifies every object file. Records whose id does not
/// match their content, or whose document no longer parses, are moved to
/// `quarantine/`.
fn rebuild(root: &Path, ids: Vec<String>, report: &mut OpenReport) -> Result<HashMap<String, Entry>, StoreError> {
    let objects = root.join("objects");
    let checked = chemdata::par::map(&ids, |id| verify(&objects.join(format!("{id}.json")), id));
    let mut index = HashMap::new();
    for (id, result) in ids.into_iter().zip(checked) {
        match result {
            Ok(entry) => {
                index.insert(id, entry);
            }
            Err(reason) => {
                tracing::warn!(%id, %reason, "quarantining stored record");
                let name = format!("{id}.json");
                fs::rename(objects.join(&name), root.join("quarantine").join(&name))?;
                report.quarantined.push(id);
            }
        }
    }
    Ok(index)
}

fn verify(path: &Path, id: &str) -> Result<Entry, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    let record: StoredMolecule = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    if record.entry.id != id || content_id(&record.document) != id {
        return Err("content does not match id".into());
    }
    let doc = parse_document(&record.document, Some(record.entry.source_format)).map_err(|e| e.to_string())?;
    let mut entry = record.entry;
    entry.metadata = extract_metadata(&doc);
    Ok(entry)
}

#[cfg(unix)]
fn sync_dir(dir: &Path) -> io::Result<()> {
    File::open(dir)?.sync_all()
}

#[cfg(not(unix))]
fn sync_dir(_dir: &Path) -> io::Result<()> {
    Ok(())
}
