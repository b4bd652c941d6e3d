//! Recomputes every embedded table over the verification grid and compares.
//!
//! Every discrepancy is checked along two independent computation paths. A
//! discrepancy both paths agree on is reported as `PAPER_TYPO_SUSPECTED`; one
//! where the paths disagree with each other is a `MISMATCH`.

mod catalog;
mod cohomology;
mod complex;
mod forms;
mod kahler;
mod printed;
mod summary;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::lie::{grid_instances, Instance};
use crate::tables::Tables;

pub use complex::{check_template_point, PointCheck};
pub use printed::{condition_matches, printed_family, PrintedFamily};
pub use summary::{AffineScan, CrossClass, KahlerAssignment, SpecialStructures, Summary, TransportCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Skipped,
    Match,
    PaperTypoSuspected,
    Mismatch,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Skipped => "SKIPPED",
            Status::Match => "MATCH",
            Status::PaperTypoSuspected => "PAPER_TYPO_SUSPECTED",
            Status::Mismatch => "MISMATCH",
        })
    }
}

/// Status of a disagreement with the table.
pub fn discrepancy(paths_agree: bool) -> Status {
    if paths_agree {
        Status::PaperTypoSuspected
    } else {
        Status::Mismatch
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub table: String,
    pub case: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub notes: String,
}

/// Accumulates the worst status and the notes of one record.
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub status: Status,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn new() -> Self {
        Self { status: Status::Match, notes: Vec::new() }
    }

    pub fn raise(&mut self, status: Status, note: impl Into<String>) {
        self.status = self.status.max(status);
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn record(self, table: &str, inst: &Instance, computed: Value, expected: Value) -> VerificationRecord {
        VerificationRecord {
            table: table.to_string(),
            case: inst.case.to_string(),
            params: inst.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            status: self.status,
            computed,
            expected,
            notes: self.notes.join("; "),
        }
    }
}

pub(crate) fn skipped(table: &str, inst: &Instance, computed: Value, note: &str) -> VerificationRecord {
    let mut o = Outcome::new();
    o.status = Status::Skipped;
    o.note(note);
    o.record(table, inst, computed, Value::Null)
}

pub const TABLE_IDS: [&str; 6] = ["2.1", "3.3", "4.2", "4.3", "4.5", "5.1"];

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn records_for<'a>(&'a self, table: &'a str) -> impl Iterator<Item = &'a VerificationRecord> + 'a {
        self.records.iter().filter(move |r| r.table == table)
    }
}

/// Full run over the default grid; records are ordered by table, then
/// catalog order, then grid order.
pub fn verify_all(tables: &Tables) -> Result<Report> {
    verify_instances(tables, &grid_instances())
}

/// Verification restricted to the given instances; Kähler rows are matched
/// among these instances only.
pub fn verify_instances(tables: &Tables, instances: &[Instance]) -> Result<Report> {
    let mut by_table: BTreeMap<&str, Vec<VerificationRecord>> = BTreeMap::new();
    let mut findings = Vec::new();
    for inst in instances {
        by_table.entry("2.1").or_default().push(catalog::check(tables, inst)?);
        let (rec, f) = complex::check(tables, inst)?;
        by_table.entry("3.3").or_default().push(rec);
        let (rec, sym) = forms::check_symplectic(tables, inst)?;
        by_table.entry("4.2").or_default().push(rec);
        by_table.entry("4.3").or_default().push(forms::check_exact(tables, inst)?);
        by_table.entry("4.5").or_default().push(cohomology::check(tables, inst)?);
        findings.push((f, sym));
    }
    let (kahler_records, kahler_findings) = kahler::check_all(tables, instances, &findings)?;
    by_table.insert("5.1", kahler_records);
    let labels: Vec<String> = tables.table_5_1.iter().map(|r| r.label.clone()).collect();
    let summary = summary::build(instances, &findings, &kahler_findings, &by_table, &labels)?;
    let records = TABLE_IDS.iter().flat_map(|t| by_table.remove(t).unwrap_or_default()).collect();
    Ok(Report { records, summary })
}
