//! Closed and exact symplectic families against their printed general forms.

use serde_json::json;

use super::printed::{condition_matches, printed_family};
use super::{discrepancy, Outcome, Status, VerificationRecord};
use crate::cohomology::CochainComplex;
use crate::error::Result;
use crate::forms::KForm;
use crate::lie::{CaseId, Instance};
use crate::symplectic::TwoFormFamily;
use crate::tables::{rows_for, FormRow, Tables};

/// Symplectic existence of one instance, shared with the later checks.
#[derive(Clone, Debug)]
pub struct SymplecticFinding {
    pub exists: bool,
}

fn family_of(cx: &CochainComplex, exact: bool) -> TwoFormFamily {
    let vecs = if exact { cx.coboundaries(2) } else { cx.cocycles(2) };
    let forms: Vec<KForm> = vecs.iter().map(|v| KForm::from_coords(cx.dim(), 2, v)).collect();
    TwoFormFamily::from_forms(cx.dim(), &forms)
}

fn compare(table: &str, rows: &[FormRow], inst: &Instance, exact: bool) -> Result<(VerificationRecord, SymplecticFinding)> {
    let g = &inst.algebra;
    let cx = CochainComplex::of(g)?;
    let family = family_of(&cx, exact);
    let second = family_of(&CochainComplex::pointwise(g)?, exact);
    let witness = family.witness();
    let exists = witness.is_some();
    let paths_agree = family.same_span_as(second.basis()) && exists == !second.pfaffian().is_zero();
    let finding = SymplecticFinding { exists };

    let mut o = Outcome::new();
    if !paths_agree {
        o.raise(Status::Mismatch, "matrix and pointwise differentials give different families");
    }
    if let Some(w) = &witness {
        if !crate::symplectic::is_nondegenerate(w) {
            o.raise(Status::Mismatch, "witness has Pf != 0 but a singular Gram matrix");
        }
    }
    let computed = json!({
        "exists": exists,
        "general_form": family.general_form(),
        "dim": family.dim(),
        "pfaffian": family.pfaffian().to_string(),
        "witness": witness.as_ref().map(|w| w.to_string()),
    });
    let selected = rows_for(rows, inst.case, &inst.params, |r| (&r.case, &r.when))?;
    if inst.case == CaseId::A4 && !exact {
        return Ok((super::skipped(table, inst, computed, "abelian algebra has no row"), finding));
    }
    let Some(row) = selected.first() else {
        if exists {
            o.raise(discrepancy(paths_agree), format!("no row, but {} is nondegenerate and {}", witness.expect("exists"), if exact { "exact" } else { "closed" }));
        } else {
            o.note("no row; Pfaffian quadratic of the family vanishes identically");
        }
        return Ok((o.record(table, inst, computed, json!({ "exists": false })), finding));
    };
    if selected.len() > 1 {
        o.raise(Status::Mismatch, format!("{} rows apply", selected.len()));
    }

    let printed = printed_family(&row.omega, &row.condition, &inst.params)?;
    if !exists {
        o.raise(discrepancy(paths_agree), "row present, but the Pfaffian quadratic vanishes identically");
    }
    let not_closed: Vec<String> = printed.names.iter().zip(&printed.forms).filter(|(_, w)| !cx.is_closed(w)).map(|(n, _)| n.clone()).collect();
    if !not_closed.is_empty() {
        o.raise(discrepancy(paths_agree), format!("printed terms {} are not closed", not_closed.join(",")));
    }
    if exact {
        let outside: Vec<String> = printed.names.iter().zip(&printed.forms).filter(|(_, w)| !family.contains(w)).map(|(n, _)| n.clone()).collect();
        if !outside.is_empty() {
            o.raise(discrepancy(paths_agree), format!("printed terms {} are not exact", outside.join(",")));
        }
    }
    if !family.same_span_as(&printed.forms) {
        let printed_span = TwoFormFamily::from_forms(4, &printed.forms);
        o.raise(
            discrepancy(paths_agree),
            format!("printed span has dimension {}, computed {} = {}", printed_span.dim(), family.dim(), family.general_form()),
        );
    }
    if printed.redundant {
        o.note("printed form repeats a basis slot");
    }
    if !printed.absent.is_empty() {
        o.raise(discrepancy(paths_agree), format!("condition names {} absent from the form", printed.absent.join(",")));
    } else if !condition_matches(&printed.pfaffian, &printed.condition) {
        o.raise(
            discrepancy(paths_agree),
            format!("printed condition {} != 0 is not Pf = {} of the printed form", printed.condition, printed.pfaffian),
        );
    }
    let expected = json!({
        "row": row.label,
        "exists": true,
        "general_form": row.omega,
        "condition": row.condition,
        "printed_pfaffian": printed.pfaffian.to_string(),
    });
    Ok((o.record(table, inst, computed, expected), finding))
}

pub(crate) fn check_symplectic(tables: &Tables, inst: &Instance) -> Result<(VerificationRecord, SymplecticFinding)> {
    compare("4.2", &tables.table_4_2, inst, false)
}

pub(crate) fn check_exact(tables: &Tables, inst: &Instance) -> Result<VerificationRecord> {
    Ok(compare("4.3", &tables.table_4_3, inst, true)?.0)
}
