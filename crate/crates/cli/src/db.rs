//! The on-disk knot database: a JSON array of records, unique by name.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sharpknot::concordance::mirror;
use sharpknot::inference::{check_consistency, InferenceOptions};
use sharpknot::{seed_database, KnotRecord};

use crate::error::CliError;

/// Environment variable overriding the database path.
pub const DB_ENV: &str = "SHARPKNOT_DB";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Database {
    records: BTreeMap<String, KnotRecord>,
}

/// Pretty JSON with every object's keys sorted, plus a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

impl Database {
    pub fn seed() -> Database {
        let mut db = Database::default();
        for r in seed_database() {
            db.records.insert(r.name.clone(), r);
        }
        db
    }

    pub fn records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Parses a JSON array of records. Unknown keys, duplicate names and
    /// inconsistent records are errors; `force` admits the latter.
    pub fn from_json(text: &str, origin: &str, force: bool) -> Result<Database, CliError> {
        let recs: Vec<KnotRecord> = serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut db = Database::default();
        for r in recs {
            db.insert(r, force)?;
        }
        Ok(db)
    }

    /// Adds or replaces a record after checking it.
    pub fn insert(&mut self, rec: KnotRecord, force: bool) -> Result<(), CliError> {
        if self.records.contains_key(&rec.name) {
            return Err(CliError::Duplicate(rec.name));
        }
        self.upsert(rec, force)
    }

    fn upsert(&mut self, rec: KnotRecord, force: bool) -> Result<(), CliError> {
        if !force {
            let found = check_consistency(&rec, &InferenceOptions::new());
            if !found.is_empty() {
                return Err(CliError::Inconsistent {
                    name: rec.name.clone(),
                    contradictions: found.iter().map(|c| c.to_string()).collect(),
                });
            }
        }
        self.records.insert(rec.name.clone(), rec);
        Ok(())
    }

    /// Merges `other` into `self`, replacing records of the same name.
    pub fn merge(&mut self, other: Database, force: bool) -> Result<usize, CliError> {
        let n = other.records.len();
        for (_, r) in other.records {
            self.upsert(r, force)?;
        }
        Ok(n)
    }

    pub fn to_json(&self) -> String {
        let recs: Vec<&KnotRecord> = self.records.values().collect();
        canonical_json(&recs)
    }

    pub fn load(path: &Path, force: bool) -> Result<Database, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.into(),
            message: e.to_string(),
        })?;
        Database::from_json(&text, &path.display().to_string(), force)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json()).map_err(|e| CliError::Io {
            path: path.into(),
            message: e.to_string(),
        })
    }

    /// `name`, or `mirror:name` for the mirror image.
    pub fn lookup(&self, spec: &str) -> Result<KnotRecord, CliError> {
        if let Some(inner) = spec.strip_prefix("mirror:") {
            return Ok(mirror(&self.lookup(inner)?));
        }
        self.records
            .get(spec)
            .cloned()
            .ok_or_else(|| CliError::UnknownKnot(spec.into()))
    }
}

/// `--db` first, then the environment variable; `None` means the seeds.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(DB_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

/// The database at `path`, or the seeds when there is no path or no file yet.
pub fn open(path: Option<&Path>, force: bool) -> Result<Database, CliError> {
    match path {
        Some(p) if p.exists() => Database::load(p, force),
        _ => Ok(Database::seed()),
    }
}
