//! The embedded knot and link corpus and batch invariant tables.
//!
//! Classical diagrams were converted from KnotInfo and LinkInfo PD codes by
//! `scripts/gen_census.py`. The virtual knots are stored as their classical
//! crossings only.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::enhanced::{enhanced_invariant, InvariantPolynomial, PolynomialJson};
use crate::rackmodule::ModuleStructure;

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/census/", $name, ".json")))),*]
    };
}

/// Entry names and documents, in table order.
const CORPUS: &[(&str, &str)] = corpus![
    "U", "U_2", "U_3",
    "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3",
    "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7",
    "8_1", "8_2", "8_3", "8_4", "8_5", "8_6", "8_7", "8_8", "8_9", "8_10", "8_11",
    "8_12", "8_13", "8_14", "8_15", "8_16", "8_17", "8_18", "8_19", "8_20", "8_21",
    "9_2", "9_24", "SK", "GK",
    "L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1",
    "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2",
    "v3_1", "v3_7",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("no census entry named {0:?}")]
    UnknownEntry(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{name}: {source}")]
    Diagram { name: String, source: DiagramError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub name: String,
    pub diagram: LinkDiagram,
}

impl CensusEntry {
    pub fn is_virtual(&self) -> bool {
        self.diagram.is_virtual()
    }
}

/// The built-in corpus, in table order.
pub fn builtin_table() -> Vec<CensusEntry> {
    CORPUS
        .iter()
        .map(|&(name, text)| CensusEntry {
            name: name.to_string(),
            diagram: LinkDiagram::parse(text).unwrap_or_else(|e| panic!("embedded diagram {name}: {e}")),
        })
        .collect()
}

pub fn builtin_names() -> Vec<&'static str> {
    CORPUS.iter().map(|&(name, _)| name).collect()
}

pub fn lookup(name: &str) -> Option<CensusEntry> {
    builtin_table().into_iter().find(|e| e.name == name)
}

/// Built-in entries by name, in the order given.
pub fn select<S: AsRef<str>>(names: &[S]) -> Result<Vec<CensusEntry>, CensusError> {
    let table = builtin_table();
    names
        .iter()
        .map(|n| {
            let n = n.as_ref();
            table.iter().find(|e| e.name == n).cloned().ok_or_else(|| CensusError::UnknownEntry(n.to_string()))
        })
        .collect()
}

/// Reads every `*.json` diagram in `dir`, sorted by file name. Files that
/// fail to parse are returned separately so a census can skip them.
pub fn load_dir(dir: &Path) -> Result<(Vec<CensusEntry>, Vec<SkippedEntry>), CensusError> {
    let io = |e: std::io::Error| CensusError::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for path in paths {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let parsed = fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| LinkDiagram::parse(&text).map_err(|e| e.to_string()));
        match parsed {
            Ok(d) => {
                let name = if d.name().is_empty() { stem } else { d.name().to_string() };
                entries.push(CensusEntry { name, diagram: d });
            }
            Err(error) => skipped.push(SkippedEntry { name: stem, error }),
        }
    }
    Ok((entries, skipped))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedEntry {
    pub name: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub invariant: InvariantPolynomial,
    pub names: Vec<String>,
}

/// Entries grouped by invariant value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    pub skipped: Vec<SkippedEntry>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    text: String,
    invariant: PolynomialJson,
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    rows: Vec<RowJson>,
    skipped: Vec<SkippedEntry>,
}

impl CensusReport {
    /// The row containing `name`, if any.
    pub fn invariant_of(&self, name: &str) -> Option<&InvariantPolynomial> {
        self.rows.iter().find(|r| r.names.iter().any(|n| n == name)).map(|r| &r.invariant)
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            rows: self
                .rows
                .iter()
                .map(|r| RowJson { text: r.invariant.to_string(), invariant: r.invariant.to_json(), entries: r.names.clone() })
                .collect(),
            skipped: self.skipped.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self.rows.iter().map(|r| r.invariant.to_string()).collect();
        let width = texts.iter().map(|t| t.chars().count()).max().unwrap_or(0).max("invariant".len());
        writeln!(f, "{:<width$} | entries", "invariant")?;
        writeln!(f, "{}-+-{}", "-".repeat(width), "-".repeat(7))?;
        for (text, row) in texts.iter().zip(&self.rows) {
            writeln!(f, "{text:<width$} | {}", row.names.join(", "))?;
        }
        for s in &self.skipped {
            writeln!(f, "skipped {}: {}", s.name, s.error)?;
        }
        Ok(())
    }
}

/// Computes `Φ_{X,R}` for each entry and groups equal values. Rows are
/// ordered by smallest exponent, then by rendered text; names keep the
/// order of `entries`.
pub fn run_census(entries: &[CensusEntry], r: &ModuleStructure) -> CensusReport {
    let values: Vec<InvariantPolynomial> = entries.par_iter().map(|e| enhanced_invariant(&e.diagram, r)).collect();
    let mut groups: BTreeMap<(Option<u128>, String), CensusRow> = BTreeMap::new();
    for (entry, value) in entries.iter().zip(values) {
        let key = (value.min_exponent(), value.to_string());
        groups
            .entry(key)
            .or_insert_with(|| CensusRow { invariant: value, names: Vec::new() })
            .names
            .push(entry.name.clone());
    }
    CensusReport { rows: groups.into_values().collect(), skipped: Vec::new() }
}
