//! Witness elections: the embedded tables, file I/O and export.

mod format;
mod tables;

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

pub use format::{parse_instance, serialize_instance, ElectionFile};

use crate::control::ReducedInstance;
use crate::elections::VotingRule;
use crate::error::{Error, Result};

/// File extension of election files.
pub const EXTENSION: &str = "election";

/// A named election file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecord {
    /// `Plur.3`, `Veto.16`, ...; for files read from disk, the file stem.
    pub id: String,
    /// Marked `†` in the embedded data: found by computer search.
    pub generated: bool,
    pub file: ElectionFile,
}

impl WitnessRecord {
    pub fn rule(&self) -> VotingRule {
        self.file.rule()
    }

    pub fn reduced(&self) -> Result<ReducedInstance> {
        self.file.reduced()
    }
}

/// All embedded witnesses: plurality, then veto, then approval, each in
/// table order.
pub fn load_embedded_corpus() -> Vec<WitnessRecord> {
    VotingRule::ALL.into_iter().flat_map(embedded_corpus).collect()
}

/// The embedded witnesses of one rule, in table order.
pub fn embedded_corpus(rule: VotingRule) -> Vec<WitnessRecord> {
    tables::parse_table(rule, tables::table(rule)).expect("embedded tables are well-formed")
}

/// Looks up an embedded witness by id.
pub fn embedded_record(id: &str) -> Option<WitnessRecord> {
    load_embedded_corpus().into_iter().find(|r| r.id == id)
}

/// Orders ids like `Plur.2 < Plur.10`: text parts lexically, digit runs
/// numerically.
pub fn compare_ids(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, xa), (db, xb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let na = xa.trim_start_matches('0');
            let nb = xb.trim_start_matches('0');
            na.len().cmp(&nb.len()).then(na.cmp(nb))
        } else {
            xa.cmp(xb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then(a.cmp(b))
}

/// Writes every embedded witness to `<dir>/<rule>/<id>.election` and
/// returns the paths written.
pub fn export(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for record in load_embedded_corpus() {
        let sub = dir.join(record.rule().name());
        fs::create_dir_all(&sub).map_err(|e| Error::io(&sub, e))?;
        let path = sub.join(format!("{}.{EXTENSION}", record.id));
        fs::write(&path, serialize_instance(&record.file)).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Reads one election file; the id is the file stem.
pub fn load_file(path: &Path) -> Result<WitnessRecord> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file = parse_instance(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(WitnessRecord {
        id,
        generated: false,
        file,
    })
}

/// Reads every `.election` file below `dir`, sorted by id.
pub fn load_dir(dir: &Path) -> Result<Vec<WitnessRecord>> {
    let mut paths = Vec::new();
    collect(dir, &mut paths)?;
    let mut records = paths.iter().map(|p| load_file(p)).collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| compare_ids(&a.id, &b.id));
    Ok(records)
}

fn collect(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_dir() {
            collect(&path, out)?;
        } else if path.extension().is_some_and(|e| e == EXTENSION) {
            out.push(path);
        }
    }
    Ok(())
}
