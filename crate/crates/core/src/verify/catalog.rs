//! Bracket relations and derived algebras.

use serde_json::json;

use super::{discrepancy, Outcome, Status, VerificationRecord};
use crate::cohomology::CochainComplex;
use crate::error::{Error, Result};
use crate::expr::{basis_atom, env_from_params, parse_expr, to_vector};
use crate::lie::{format_vector, Instance, LieAlgebra, Params};
use crate::linalg::{same_span, span_basis, Matrix, Scalar};
use crate::tables::{rows_for, Tables};

const TABLE: &str = "2.1";

fn real_vector(text: &str, params: &Params) -> Result<Vec<Scalar>> {
    let p = parse_expr(text)?.eval(&env_from_params(params))?;
    to_vector(&p, 4)?
        .into_iter()
        .map(|c| match c.as_constant() {
            Some(z) if z.is_real() => Ok(z.re),
            _ => Err(Error::Invalid(format!("`{text}` is not a real vector"))),
        })
        .collect()
}

fn basis_index(atom: &str) -> Result<usize> {
    match basis_atom(atom.trim()).as_deref() {
        Some([k]) if *k < 4 => Ok(*k),
        _ => Err(Error::Invalid(format!("`{atom}` is not a basis vector"))),
    }
}

/// Algebra from printed relations `[ea,eb] = v`.
pub fn printed_algebra(relations: &[String], params: &Params) -> Result<LieAlgebra> {
    let mut rows = Vec::new();
    for rel in relations {
        let (lhs, rhs) = rel.split_once('=').ok_or_else(|| Error::Invalid(format!("bad relation `{rel}`")))?;
        let inner = lhs.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| Error::Invalid(format!("bad relation `{rel}`")))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Invalid(format!("bad relation `{rel}`")))?;
        let v = real_vector(rhs, params)?;
        let terms = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        rows.push((basis_index(a)?, basis_index(b)?, terms));
    }
    LieAlgebra::from_brackets(4, "printed", params.clone(), &rows)
}

/// 𝔤' as the common kernel of the closed 1-forms, from the pointwise differential.
pub fn derived_by_annihilator(g: &LieAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let closed = CochainComplex::pointwise(g)?.cocycles(1);
    if closed.is_empty() {
        return Ok(span_basis(g.dim(), &(0..g.dim()).map(|i| crate::lie::unit(g.dim(), i)).collect::<Vec<_>>()));
    }
    Ok(Matrix::from_rows(closed).nullspace())
}

pub(crate) fn check(tables: &Tables, inst: &Instance) -> Result<VerificationRecord> {
    let g = &inst.algebra;
    let rows = rows_for(&tables.table_2_1, inst.case, &inst.params, |r| (&r.case, ""))?;
    let mut o = Outcome::new();
    let derived = g.derived_subalgebra();
    let second = derived_by_annihilator(g)?;
    let paths_agree = same_span(4, &derived, &second);
    if !paths_agree {
        o.raise(Status::Mismatch, "derived algebra: bracket span and annihilator of closed 1-forms differ");
    }
    let computed = json!({
        "derived": derived.iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
        "derived_dim": derived.len(),
        "jacobi": g.jacobi_defect().is_empty(),
    });
    let Some(row) = rows.first() else {
        o.raise(Status::Mismatch, "no row for this case");
        return Ok(o.record(TABLE, inst, computed, serde_json::Value::Null));
    };

    let printed = printed_algebra(&row.brackets, &inst.params)?;
    if printed.nonzero_constants() != g.nonzero_constants() {
        o.raise(Status::Mismatch, "printed brackets differ from the catalog constants");
    }
    if !printed.jacobi_defect().is_empty() || !printed.antisymmetry_defects().is_empty() {
        o.raise(Status::Mismatch, "printed brackets violate the Jacobi identity");
    }
    let gens: Vec<Vec<Scalar>> = row
        .derived
        .iter()
        .map(|t| real_vector(t, &inst.params))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let expected_span = span_basis(4, &gens);
    if !same_span(4, &derived, &expected_span) {
        o.raise(
            discrepancy(paths_agree),
            format!("printed derived algebra has dimension {}, computed {}", expected_span.len(), derived.len()),
        );
    }
    let expected = json!({
        "derived": expected_span.iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
        "derived_dim": expected_span.len(),
    });
    Ok(o.record(TABLE, inst, computed, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog_build, CaseId};
    use crate::linalg::q;

    #[test]
    fn d4_lambda_one_drops_e2() {
        let p = Params::from([("lambda".to_string(), q(1, 1))]);
        let g = catalog_build(CaseId::D4Lambda, &p).unwrap();
        let d = g.derived_subalgebra();
        assert_eq!(d.len(), 2);
        assert!(same_span(4, &d, &derived_by_annihilator(&g).unwrap()));
    }

    #[test]
    fn printed_relations() {
        let p = Params::from([("gamma".to_string(), q(1, 2))]);
        let rel = vec!["[e1,e2] = gamma*e2 - e3".to_string(), "[e1,e3] = e2 + gamma*e3".to_string()];
        let g = printed_algebra(&rel, &p).unwrap();
        assert_eq!(g.basis_bracket(1, 0), vec![q(0, 1), q(-1, 2), q(1, 1), q(0, 1)]);
        assert!(printed_algebra(&["e1,e2 = e3".to_string()], &p).is_err());
    }
}
