//! Kähler pairs: printed `(J, ω)` rows and the structures met elsewhere.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::complex::ComplexFindings;
use super::forms::SymplecticFinding;
use super::printed::{condition_matches, printed_family};
use super::{discrepancy, Outcome, Status, VerificationRecord};
use crate::complex::{is_integrable, is_integrable_by_eigenspace, AlmostComplexStructure};
use crate::error::Result;
use crate::kahler::{compatible_family, compatible_family_by_intersection, metric_from};
use crate::lie::{CaseId, Instance, LieAlgebra, Params};
use crate::tables::{applies, KahlerRow, KahlerStructure, Tables};

const TABLE: &str = "5.1";

#[derive(Clone, Debug, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub j: String,
    pub integrable: bool,
    pub family: String,
    pub family_dim: usize,
    pub witness: Option<String>,
    pub signature: Option<String>,
    pub defects: Vec<String>,
    #[serde(skip)]
    pub paths_agree: bool,
}

fn check_structure(g: &LieAlgebra, params: &Params, s: &KahlerStructure) -> Result<StructureCheck> {
    let j = AlmostComplexStructure::parse(&s.j, 4)?;
    let integrable = is_integrable(g, &j)?;
    let family = compatible_family(g, &j)?;
    let second = compatible_family_by_intersection(g, &j)?;
    let paths_agree = integrable == is_integrable_by_eigenspace(g, &j) && family.same_span_as(second.basis());
    let mut defects = Vec::new();
    if !integrable {
        defects.push(format!("{}: J is not integrable", s.name));
    }
    let printed = printed_family(&s.omega, &s.condition, params)?;
    if !family.same_span_as(&printed.forms) {
        defects.push(format!("{}: compatible family is {} (dimension {}), printed span differs", s.name, family.general_form(), family.dim()));
    }
    if !printed.absent.is_empty() {
        defects.push(format!("{}: condition names {} absent from the form", s.name, printed.absent.join(",")));
    } else if !condition_matches(&printed.pfaffian, &printed.condition) {
        defects.push(format!("{}: condition {} is not Pf = {} of the printed form", s.name, printed.condition, printed.pfaffian));
    }
    let witness = family.witness();
    let mut signature = None;
    match &witness {
        None => defects.push(format!("{}: no nondegenerate compatible form", s.name)),
        Some(w) => match metric_from(w, &j) {
            Ok(m) if m.is_j_invariant(&j) => signature = Some(m.signature.to_string()),
            Ok(_) => defects.push(format!("{}: metric is not J-invariant", s.name)),
            Err(e) => defects.push(format!("{}: {e}", s.name)),
        },
    }
    Ok(StructureCheck {
        name: s.name.clone(),
        j: j.to_string(),
        integrable,
        family: family.general_form(),
        family_dim: family.dim(),
        witness: witness.map(|w| w.to_string()),
        signature,
        defects,
        paths_agree,
    })
}

/// Kähler data of one instance for the summary.
#[derive(Clone, Debug, Default, Serialize)]
pub struct KahlerFinding {
    pub instance: String,
    pub case: String,
    pub complex: bool,
    pub symplectic: bool,
    pub kahler: bool,
    /// Integrable structures tested for a compatible nondegenerate form.
    pub tested: usize,
    pub example: Option<String>,
    /// Indices into the table rows assigned to this instance.
    pub rows: Vec<usize>,
}

struct RowEval<'a> {
    index: usize,
    row: &'a KahlerRow,
    inst: usize,
    checks: Vec<StructureCheck>,
}

impl RowEval<'_> {
    fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.defects.is_empty())
    }
    fn paths_agree(&self) -> bool {
        self.checks.iter().all(|c| c.paths_agree)
    }
}

pub(crate) fn check_all(
    tables: &Tables,
    instances: &[Instance],
    findings: &[(ComplexFindings, SymplecticFinding)],
) -> Result<(Vec<VerificationRecord>, Vec<KahlerFinding>)> {
    // every row against every candidate instance; a row belongs to the
    // candidates where it holds, or to its first candidate if it holds nowhere
    let mut assigned: BTreeMap<usize, Vec<RowEval>> = BTreeMap::new();
    let mut elsewhere: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (index, row) in tables.table_5_1.iter().enumerate() {
        let mut evals = Vec::new();
        for (ci, c) in row.candidates.iter().enumerate() {
            let case: CaseId = c.case.parse()?;
            for (k, inst) in instances.iter().enumerate() {
                if inst.case != case || !applies(&c.when, &inst.params)? {
                    continue;
                }
                let checks = row.structures.iter().map(|s| check_structure(&inst.algebra, &inst.params, s)).collect::<Result<Vec<_>>>()?;
                evals.push((ci, RowEval { index, row, inst: k, checks }));
            }
        }
        let fits: Vec<usize> = evals.iter().filter(|(_, e)| e.ok()).map(|(ci, _)| *ci).collect();
        for (ci, e) in evals {
            let keep = if fits.is_empty() { ci == 0 } else { fits.contains(&ci) };
            if keep {
                assigned.entry(e.inst).or_default().push(e);
            } else {
                elsewhere.entry(e.inst).or_default().push(row.label.clone());
            }
        }
    }

    let mut records = Vec::new();
    let mut out = Vec::new();
    for (k, inst) in instances.iter().enumerate() {
        let (cf, sf) = &findings[k];
        let g = &inst.algebra;
        let mut o = Outcome::new();
        let mut kf = KahlerFinding { instance: inst.name(), case: inst.case.to_string(), complex: !cf.structures.is_empty(), symplectic: sf.exists, ..Default::default() };
        for s in &cf.structures {
            let fam = compatible_family(g, &s.j)?;
            kf.tested += 1;
            if let Some(w) = fam.witness() {
                if !kf.kahler {
                    kf.kahler = true;
                    kf.example = Some(format!("J: {} ({}), omega = {w}", s.j, s.source));
                }
            }
        }
        let evals = assigned.remove(&k).unwrap_or_default();
        let mut checks_json = Vec::new();
        for e in &evals {
            kf.rows.push(e.index);
            if !e.paths_agree() {
                o.raise(Status::Mismatch, format!("{}: integrability or compatible-family routes disagree", e.row.label));
            }
            for c in &e.checks {
                for d in &c.defects {
                    o.raise(discrepancy(e.paths_agree()), format!("{}: {d}", e.row.label));
                }
                if c.witness.is_some() && c.integrable {
                    kf.kahler = true;
                    kf.example.get_or_insert_with(|| format!("J: {} (row {}), omega = {}", c.j, e.row.label, c.witness.clone().unwrap_or_default()));
                }
            }
            if e.row.flagged && !e.row.note.is_empty() {
                o.note(format!("{}: {}", e.row.label, e.row.note));
            }
            checks_json.push(json!({ "row": e.row.label, "structures": e.checks }));
        }
        if let Some(labels) = elsewhere.get(&k) {
            o.note(format!("rows {} list this case as a candidate but hold for another", labels.join(",")));
        }
        let computed = json!({
            "rows": checks_json,
            "kahler": kf.kahler,
            "tested_structures": kf.tested,
            "example": kf.example,
        });
        let rec = if inst.case == CaseId::A4 {
            super::skipped(TABLE, inst, computed, "abelian algebra has no row")
        } else if evals.is_empty() {
            if kf.kahler {
                o.raise(Status::PaperTypoSuspected, format!("no row, but {}", kf.example.clone().unwrap_or_default()));
            } else {
                o.note(format!("no row; none of {} integrable structures has a nondegenerate compatible form", kf.tested));
            }
            o.record(TABLE, inst, computed, json!({ "kahler": false }))
        } else {
            let expected = json!({
                "rows": evals.iter().map(|e| json!({
                    "row": e.row.label,
                    "structures": e.row.structures.iter().map(|s| json!({"name": s.name, "j": s.j, "omega": s.omega, "condition": s.condition})).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            o.record(TABLE, inst, computed, expected)
        };
        records.push(rec);
        out.push(kf);
    }
    Ok((records, out))
}
