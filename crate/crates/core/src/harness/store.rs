//! Persistent corpus indices and resumable scans.
//!
//! Files are written to a sibling temporary file and renamed into place, so
//! an interrupted run leaves either the old or the new contents.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_forms, enumerate_unsigned};
use super::scan::{resume_scan, ExtremalRecord, ScanSpec};
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Sign;

pub const INDEX_FORMAT: &str = "sgchroma-corpus/1";

/// Canonical forms (hex) of every class of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub format: String,
    pub n: usize,
    pub signed: bool,
    pub count: usize,
    pub forms: Vec<String>,
}

impl CorpusIndex {
    pub fn build(n: usize, signed: bool) -> Result<Self> {
        let forms: Vec<String> = if signed {
            enumerate_forms(n, false)?.iter().map(|f| f.to_hex()).collect()
        } else {
            enumerate_unsigned(n)?
                .iter()
                .map(|g| canonical_form(&g.with_sign(Sign::Pos)).map(|f| f.to_hex()))
                .collect::<Result<_>>()?
        };
        Ok(CorpusIndex { format: INDEX_FORMAT.into(), n, signed, count: forms.len(), forms })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, &to_json(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let idx: CorpusIndex = from_json(&fs::read_to_string(path)?)?;
        if idx.format != INDEX_FORMAT || idx.count != idx.forms.len() {
            return Err(Error::Io(format!("{}: not a valid corpus index", path.display())));
        }
        Ok(idx)
    }
}

/// Runs `spec`, saving the record to `path` after each order. An existing
/// checkpoint for the same spec is resumed; one for another spec is an
/// error.
pub fn run_scan_checkpointed(spec: &ScanSpec, path: &Path) -> Result<ExtremalRecord> {
    let start = if path.exists() {
        let rec: ExtremalRecord = from_json(&fs::read_to_string(path)?)?;
        if rec.spec != *spec {
            return Err(Error::InvalidParams(format!("{} holds a checkpoint for another scan", path.display())));
        }
        rec
    } else {
        ExtremalRecord::empty(*spec)
    };
    resume_scan(spec, start, |rec| write_atomic(path, &to_json(rec)?))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Io(e.to_string()))
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
