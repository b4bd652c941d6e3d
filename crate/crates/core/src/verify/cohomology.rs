//! Betti numbers and class representatives.

use serde_json::json;

use super::{discrepancy, Outcome, Status, VerificationRecord};
use crate::cohomology::{class_labels, CochainComplex};
use crate::error::Result;
use crate::forms::{parse_form_of_degree, KForm};
use crate::lie::{CaseId, Instance};
use crate::tables::{applies, rows_for, CohomologyRow, Tables};

const TABLE: &str = "4.5";

/// Disagreements of one printed row with the computed cohomology.
fn row_defects(cx: &CochainComplex, betti: &[usize], row: &CohomologyRow) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for k in 1..=3 {
        let reps: Vec<KForm> = row.classes(k).iter().map(|t| parse_form_of_degree(t, 4, k)).collect::<Result<_>>()?;
        let open: Vec<String> = reps.iter().filter(|w| !cx.is_closed(w)).map(|w| w.to_string()).collect();
        if !open.is_empty() {
            out.push(format!("H{k}: {} not closed", open.join(",")));
        } else if !cx.independent_mod_exact(&reps) {
            out.push(format!("H{k}: printed classes are dependent modulo exact forms"));
        }
        if reps.len() != betti[k] {
            out.push(format!("H{k}: {} printed classes, b{k} = {}", reps.len(), betti[k]));
        }
    }
    Ok(out)
}

fn printed_labels(row: &CohomologyRow) -> Vec<String> {
    (1..=3).map(|k| if row.classes(k).is_empty() { "0".to_string() } else { row.classes(k).iter().map(|c| format!("[{c}]")).collect() }).collect()
}

pub(crate) fn check(tables: &Tables, inst: &Instance) -> Result<VerificationRecord> {
    let g = &inst.algebra;
    let cx = CochainComplex::of(g)?;
    let pointwise = CochainComplex::pointwise(g)?;
    let betti = cx.betti_numbers();
    let second: Vec<usize> = (0..=4).map(|k| pointwise.betti_fraction_free(k)).collect();
    let paths_agree = betti == second;
    let mut o = Outcome::new();
    if !paths_agree {
        o.raise(Status::Mismatch, format!("rational ranks give {betti:?}, fraction-free pointwise ranks give {second:?}"));
    }
    let euler: i64 = betti.iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
    if betti[0] != 1 || euler != 0 || betti[1] != 4 - g.derived_subalgebra().len() {
        o.raise(Status::Mismatch, format!("b0 = {}, Euler characteristic {euler}, b1 vs codim of derived algebra", betti[0]));
    }
    let computed = json!({
        "betti": betti,
        "classes": (1..=3).map(|k| class_labels(&cx.representatives(k))).collect::<Vec<_>>(),
    });
    if inst.case == CaseId::A4 {
        let mut rec = super::skipped(TABLE, inst, computed, "abelian algebra has no row");
        if o.status == Status::Mismatch {
            rec.status = Status::Mismatch;
        }
        return Ok(rec);
    }
    let rows = rows_for(&tables.table_4_5, inst.case, &inst.params, |r| (&r.case, &r.when))?;
    if rows.is_empty() {
        o.raise(Status::PaperTypoSuspected, "no row covers this instance");
        return Ok(o.record(TABLE, inst, computed, serde_json::Value::Null));
    }
    if rows.len() > 1 {
        o.raise(Status::Mismatch, format!("{} rows apply", rows.len()));
    }
    for row in &rows {
        for d in row_defects(&cx, &betti, row)? {
            o.raise(discrepancy(paths_agree), format!("{}: {d}", row.label));
        }
    }
    // rows selected only under the second reading of an ambiguous condition
    for row in &tables.table_4_5 {
        let Some(alt) = &row.when_alt else { continue };
        if row.case.parse::<CaseId>()? != inst.case || applies(&row.when, &inst.params)? || !applies(alt, &inst.params)? {
            continue;
        }
        let defects = row_defects(&cx, &betti, row)?;
        o.note(if defects.is_empty() {
            format!("alternative reading of {} also selects this instance and matches", row.label)
        } else {
            format!("alternative reading of {} also selects this instance and fails: {}", row.label, defects.join(", "))
        });
    }
    let expected = json!({
        "row": rows.iter().map(|r| r.label.clone()).collect::<Vec<_>>(),
        "classes": rows.iter().map(|r| printed_labels(r)).collect::<Vec<_>>(),
    });
    Ok(o.record(TABLE, inst, computed, expected))
}
