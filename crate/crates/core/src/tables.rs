//! The embedded classification tables, parsed from a TOML data file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{env_from_params, parse_cond};
use crate::lie::{CaseId, Params};

/// The data file shipped with the crate.
pub const EMBEDDED: &str = include_str!("../data/tables.toml");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Tables {
    pub version: u32,
    pub table_2_1: Vec<CatalogRow>,
    pub table_3_3: Vec<ComplexRow>,
    pub table_4_2: Vec<FormRow>,
    pub table_4_3: Vec<FormRow>,
    pub table_4_5: Vec<CohomologyRow>,
    pub table_5_1: Vec<KahlerRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CatalogRow {
    pub case: String,
    pub brackets: Vec<String>,
    pub derived: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SubalgebraEntry {
    pub u: String,
    pub v: String,
    #[serde(default)]
    pub cond: String,
    #[serde(default)]
    pub eps: bool,
    pub alt: Option<Box<SubalgebraEntry>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ComplexRow {
    pub label: String,
    pub case: String,
    #[serde(default)]
    pub when: String,
    #[serde(default)]
    pub flagged: bool,
    #[serde(default)]
    pub note: String,
    pub q: Vec<SubalgebraEntry>,
    pub templates: Vec<SubalgebraEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FormRow {
    pub label: String,
    pub case: String,
    #[serde(default)]
    pub when: String,
    #[serde(default)]
    pub flagged: bool,
    #[serde(default)]
    pub note: String,
    pub omega: String,
    pub condition: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CohomologyRow {
    pub label: String,
    pub case: String,
    #[serde(default)]
    pub when: String,
    /// A second reading of an ambiguous condition.
    pub when_alt: Option<String>,
    #[serde(default)]
    pub flagged: bool,
    pub h1: Vec<String>,
    pub h2: Vec<String>,
    pub h3: Vec<String>,
}

impl CohomologyRow {
    pub fn classes(&self, k: usize) -> &[String] {
        match k {
            1 => &self.h1,
            2 => &self.h2,
            3 => &self.h3,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Candidate {
    pub case: String,
    #[serde(default)]
    pub when: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct KahlerStructure {
    pub name: String,
    pub j: String,
    pub omega: String,
    pub condition: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct KahlerRow {
    pub label: String,
    pub candidates: Vec<Candidate>,
    #[serde(default)]
    pub flagged: bool,
    #[serde(default)]
    pub note: String,
    pub structures: Vec<KahlerStructure>,
}

impl Tables {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded table file is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t: Tables = toml::from_str(text).map_err(|e| Error::Invalid(format!("table file: {e}")))?;
        t.validate()?;
        Ok(t)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        let cases = self
            .table_2_1
            .iter()
            .map(|r| r.case.as_str())
            .chain(self.table_3_3.iter().map(|r| r.case.as_str()))
            .chain(self.table_4_2.iter().chain(&self.table_4_3).map(|r| r.case.as_str()))
            .chain(self.table_4_5.iter().map(|r| r.case.as_str()))
            .chain(self.table_5_1.iter().flat_map(|r| r.candidates.iter().map(|c| c.case.as_str())));
        for c in cases {
            c.parse::<CaseId>()?;
        }
        Ok(())
    }
}

/// Whether a row condition holds at a parameter assignment.
pub fn applies(when: &str, params: &Params) -> Result<bool> {
    parse_cond(when)?.eval(&env_from_params(params))
}

pub fn rows_for<'a, R>(rows: &'a [R], case: CaseId, params: &Params, key: impl Fn(&R) -> (&str, &str)) -> Result<Vec<&'a R>> {
    let mut out = Vec::new();
    for r in rows {
        let (c, when) = key(r);
        if c.parse::<CaseId>()? == case && applies(when, params)? {
            out.push(r);
        }
    }
    Ok(out)
}
