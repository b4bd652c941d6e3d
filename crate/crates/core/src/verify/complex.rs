//! Complex subalgebras `q`, their general forms, and grid-search coverage.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::{discrepancy, Outcome, Status, VerificationRecord};
use crate::complex::{
    commutes_with_conjugate, default_grid, grid_search_subalgebras, is_abelian_structure, is_abelian_subalgebra,
    is_biinvariant, is_direct_sum, is_direct_sum_real, is_integrable, is_subalgebra, j_from_subalgebra, small_grid,
    AlmostComplexStructure, ComplexSubalgebra, TemplateInstance, DEFAULT_CAP,
};
use crate::error::Result;
use crate::expr::{env_from_params, parse_cond, parse_expr, Env};
use crate::lie::{CaseId, Instance, LieAlgebra};
use crate::linalg::{Field, GaussianScalar, Scalar};
use crate::tables::{rows_for, ComplexRow, SubalgebraEntry, Tables};

type G = GaussianScalar;

const TABLE: &str = "3.3";
/// Constraint-satisfying generic samples per general form.
const SAMPLES: usize = 8;

/// One coefficient assignment checked along both routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub constraint: bool,
    pub closed: bool,
    pub direct_sum: bool,
    /// Direct sum from the real and imaginary parts.
    pub direct_sum_real: bool,
    /// Nijenhuis integrability of the induced J, when it exists.
    pub integrable: Option<bool>,
}

impl PointCheck {
    pub fn pass(&self) -> bool {
        self.constraint && self.closed && self.direct_sum
    }

    /// Both routes agree on direct sum and on integrability.
    pub fn consistent(&self) -> bool {
        self.direct_sum == self.direct_sum_real && self.integrable.map_or(true, |i| i == self.closed)
    }

    /// Fails closure or the direct sum, besides the constraint.
    pub fn fails_structurally(&self) -> bool {
        !self.closed || !self.direct_sum
    }
}

pub fn check_template_point(g: &LieAlgebra, t: &TemplateInstance, assign: &Env) -> Result<(PointCheck, Option<ComplexSubalgebra>)> {
    let (u, v) = t.evaluate(assign)?;
    let closed = is_subalgebra(g, &u, &v).closed;
    let direct_sum = is_direct_sum(&u, &v);
    let q = ComplexSubalgebra::new(u.clone(), v.clone());
    let integrable = if direct_sum { Some(is_integrable(g, &j_from_subalgebra(&q)?)?) } else { None };
    let pc = PointCheck { constraint: t.constraint_holds(assign)?, closed, direct_sum, direct_sum_real: is_direct_sum_real(&u, &v), integrable };
    Ok((pc, Some(q).filter(|_| direct_sum && closed)))
}

/// A complex structure met during verification, kept for the later checks.
#[derive(Clone, Debug)]
pub struct FoundStructure {
    pub source: String,
    pub q: ComplexSubalgebra,
    pub j: AlmostComplexStructure,
}

#[derive(Clone, Debug, Default)]
pub struct ComplexFindings {
    pub structures: Vec<FoundStructure>,
    pub has_row: bool,
    pub grid_hits: usize,
    pub uncovered: Vec<String>,
    /// First abelian structure, with `[q,q] = 0` and `[JX,JY] = [X,Y]` agreeing on all.
    pub abelian: Option<String>,
    pub biinvariant: Option<String>,
    pub abelian_paths_agree: bool,
    pub biinvariant_paths_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
struct EntryReport {
    kind: &'static str,
    u: String,
    v: String,
    eps: Option<i64>,
    points: usize,
    failures: usize,
    violating: usize,
    violating_passing: usize,
    passes: bool,
    alt: Option<bool>,
}

/// `eps = ±1` instances; a corrected reading keeps the sign of the printed one.
fn instances_of(e: &SubalgebraEntry, label: &str, base: &Env, inherited: Option<i64>) -> Result<Vec<(Option<i64>, TemplateInstance)>> {
    let signs: Vec<Option<i64>> = if e.eps { vec![Some(1), Some(-1)] } else { vec![inherited] };
    let mut out = Vec::new();
    for s in signs {
        let mut env = base.clone();
        if let Some(s) = s {
            env.insert("eps".into(), G::real(Scalar::from(s)));
        }
        let t = TemplateInstance::new(label, &parse_expr(&e.u)?, &parse_expr(&e.v)?, parse_cond(&e.cond)?, env, 4)?;
        out.push((s, t));
    }
    Ok(out)
}

/// Every assignment of the free variables from `grid`.
fn exhaustive(vars: &[String], grid: &[G]) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for name in vars {
        out = out
            .into_iter()
            .flat_map(|e| {
                grid.iter().map(move |x| {
                    let mut e = e.clone();
                    e.insert(name.clone(), x.clone());
                    e
                })
            })
            .collect();
    }
    out
}

fn real_projection(a: &Env) -> Env {
    a.iter().map(|(k, v)| (k.clone(), G::real(v.re.clone()))).collect()
}

struct EntryRun {
    passes: bool,
    consistent: bool,
    points: usize,
    failures: usize,
    violating: usize,
    violating_passing: usize,
    first_failure: Option<String>,
    found: Vec<ComplexSubalgebra>,
}

fn run_entry(g: &LieAlgebra, t: &TemplateInstance) -> Result<EntryRun> {
    let mut satisfying = Vec::new();
    if t.free_variables().is_empty() {
        satisfying.push(Env::new());
    } else {
        for p in t.sample_points(5 * SAMPLES) {
            if t.constraint_holds(&p)? {
                satisfying.push(p);
            }
            if satisfying.len() == SAMPLES {
                break;
            }
        }
        for p in exhaustive(t.free_variables(), &small_grid()) {
            if t.constraint_holds(&p)? {
                satisfying.push(p);
            }
        }
    }
    let mut run = EntryRun { passes: true, consistent: true, points: 0, failures: 0, violating: 0, violating_passing: 0, first_failure: None, found: Vec::new() };
    for p in &satisfying {
        let (pc, q) = check_template_point(g, t, p)?;
        run.points += 1;
        run.consistent &= pc.consistent();
        if !pc.pass() {
            run.passes = false;
            run.failures += 1;
            if run.first_failure.is_none() {
                let at = p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
                run.first_failure = Some(if at.is_empty() { "fails".into() } else { format!("fails at {at}") });
            }
        }
        run.found.extend(q);
    }
    if !t.free_variables().is_empty() {
        let mut seen = BTreeSet::new();
        for p in t.sample_points(5 * SAMPLES).iter().map(real_projection) {
            let key = format!("{p:?}");
            if !seen.insert(key) || t.constraint_holds(&p)? {
                continue;
            }
            let (pc, _) = check_template_point(g, t, &p)?;
            run.consistent &= pc.consistent();
            run.violating += 1;
            if !pc.fails_structurally() {
                run.violating_passing += 1;
            }
        }
    }
    Ok(run)
}

fn entry_text(e: &SubalgebraEntry) -> String {
    let c = if e.cond.is_empty() { String::new() } else { format!(" [{}]", e.cond) };
    format!("<{}, {}>{c}", e.u, e.v)
}

struct RowRun {
    reports: Vec<EntryReport>,
    /// Printed and corrected instances, for coverage of grid hits.
    printed: Vec<TemplateInstance>,
    corrected: Vec<TemplateInstance>,
}

fn check_row(g: &LieAlgebra, row: &ComplexRow, base: &Env, o: &mut Outcome, found: &mut Vec<FoundStructure>) -> Result<RowRun> {
    let mut rr = RowRun { reports: Vec::new(), printed: Vec::new(), corrected: Vec::new() };
    let entries = row.q.iter().map(|e| ("q", e)).chain(row.templates.iter().map(|e| ("template", e)));
    for (kind, e) in entries {
        for (eps, t) in instances_of(e, &row.label, base, None)? {
            let run = run_entry(g, &t)?;
            let name = match eps {
                Some(s) => format!("{kind} {} (eps={s})", entry_text(e)),
                None => format!("{kind} {}", entry_text(e)),
            };
            found.extend(run.found.iter().map(|q| FoundStructure { source: name.clone(), q: q.clone(), j: j_from_subalgebra(q).expect("direct sum") }));
            if !run.consistent {
                o.raise(Status::Mismatch, format!("{name}: closure and Nijenhuis routes disagree"));
            }
            if kind == "template" && !t.free_variables().is_empty() && run.points < 5 {
                o.raise(Status::Mismatch, format!("{name}: only {} constraint-satisfying samples", run.points));
            }
            if run.violating_passing > 0 {
                o.note(format!("{name}: {} of {} constraint-violating points still close and split", run.violating_passing, run.violating));
            }
            let mut alt_pass = None;
            if !run.passes {
                let mut reading = None;
                if let Some(alt) = &e.alt {
                    let mut ok = true;
                    for (_, at) in instances_of(alt, &row.label, base, eps)? {
                        let ar = run_entry(g, &at)?;
                        ok &= ar.passes && ar.consistent;
                        found.extend(ar.found.iter().map(|q| FoundStructure { source: format!("corrected {}", entry_text(alt)), q: q.clone(), j: j_from_subalgebra(q).expect("direct sum") }));
                        rr.corrected.push(at);
                    }
                    alt_pass = Some(ok);
                    reading = Some(if ok { format!("; reading {} passes", entry_text(alt)) } else { format!("; reading {} also fails", entry_text(alt)) });
                }
                o.raise(
                    discrepancy(run.consistent),
                    format!("{name}: {} of {} points {}{}", run.failures, run.points, run.first_failure.clone().unwrap_or_default(), reading.unwrap_or_default()),
                );
            } else {
                rr.corrected.push(t.clone());
                // a passing entry may still be narrower than its corrected reading
                if let Some(alt) = &e.alt {
                    for (_, at) in instances_of(alt, &row.label, base, eps)? {
                        let ar = run_entry(g, &at)?;
                        if !(ar.passes && ar.consistent) {
                            o.raise(Status::Mismatch, format!("{name}: corrected reading {} fails", entry_text(alt)));
                        }
                        found.extend(ar.found.iter().map(|q| FoundStructure { source: format!("corrected {}", entry_text(alt)), q: q.clone(), j: j_from_subalgebra(q).expect("direct sum") }));
                        rr.corrected.push(at);
                    }
                }
            }
            rr.reports.push(EntryReport {
                kind,
                u: e.u.clone(),
                v: e.v.clone(),
                eps,
                points: run.points,
                failures: run.failures,
                violating: run.violating,
                violating_passing: run.violating_passing,
                passes: run.passes,
                alt: alt_pass,
            });
            rr.printed.push(t);
        }
    }
    Ok(rr)
}

fn covered_by(ts: &[TemplateInstance], q: &ComplexSubalgebra) -> Result<bool> {
    for t in ts {
        if t.find_member(&q.u, &q.v)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Standard J of the abelian algebra, `Je1 = e2`, `Je3 = e4`.
fn abelian_standard() -> FoundStructure {
    let (o, z, i) = (G::one(), G::zero(), G::i());
    let q = ComplexSubalgebra::new(vec![o.clone(), i.clone(), z.clone(), z.clone()], vec![z.clone(), z, o, i]);
    let j = j_from_subalgebra(&q).expect("direct sum");
    FoundStructure { source: "standard".into(), q, j }
}

fn dedup(found: Vec<FoundStructure>) -> Vec<FoundStructure> {
    let mut seen = BTreeSet::new();
    found.into_iter().filter(|f| seen.insert(format!("{:?}", f.j))).collect()
}

pub(crate) fn check(tables: &Tables, inst: &Instance) -> Result<(VerificationRecord, ComplexFindings)> {
    let g = &inst.algebra;
    let mut f = ComplexFindings { abelian_paths_agree: true, biinvariant_paths_agree: true, ..Default::default() };
    let mut o = Outcome::new();
    if inst.case == CaseId::A4 {
        f.structures = vec![abelian_standard()];
        classify(g, &mut f, &mut o)?;
        let mut rec = super::skipped(TABLE, inst, json!({ "abelian": f.abelian, "biinvariant": f.biinvariant }), "abelian algebra has no row; every J is abelian and bi-invariant");
        if o.status == Status::Mismatch {
            rec.status = Status::Mismatch;
        }
        return Ok((rec, f));
    }
    let rows = rows_for(&tables.table_3_3, inst.case, &inst.params, |r| (&r.case, &r.when))?;
    f.has_row = !rows.is_empty();
    let base = env_from_params(&inst.params);
    let mut found = Vec::new();
    let mut printed = Vec::new();
    let mut corrected = Vec::new();
    let mut reports = Vec::new();
    let mut labels = Vec::new();
    for row in &rows {
        let rr = check_row(g, row, &base, &mut o, &mut found)?;
        printed.extend(rr.printed);
        corrected.extend(rr.corrected);
        reports.extend(rr.reports);
        labels.push(row.label.clone());
    }

    let search = grid_search_subalgebras(g, &default_grid(), DEFAULT_CAP);
    f.grid_hits = search.hits.len();
    let mut hit_paths_agree = true;
    let mut outside_printed = 0usize;
    for h in &search.hits {
        let j = j_from_subalgebra(h)?;
        hit_paths_agree &= is_integrable(g, &j)?;
        let in_printed = covered_by(&printed, h)?;
        if !in_printed {
            outside_printed += 1;
            if !covered_by(&corrected, h)? {
                f.uncovered.push(h.describe());
            }
        }
        found.push(FoundStructure { source: "grid".into(), q: h.clone(), j });
    }
    if !hit_paths_agree {
        o.raise(Status::Mismatch, "a grid hit induces a J with nonzero Nijenhuis tensor");
    }
    if search.truncated {
        o.note(format!("grid search truncated at {} instances", search.examined));
    }
    if rows.is_empty() {
        if f.grid_hits > 0 {
            o.raise(discrepancy(hit_paths_agree), format!("no row, but the grid search finds {} complex subalgebras, e.g. {}", f.grid_hits, search.hits[0].describe()));
        } else {
            o.note("no row; grid search finds no complex subalgebra");
        }
    } else if !f.uncovered.is_empty() {
        o.raise(
            discrepancy(hit_paths_agree),
            format!("{} grid hits lie in no listed general form, e.g. {}", f.uncovered.len(), f.uncovered[0]),
        );
    } else if outside_printed > 0 {
        o.raise(discrepancy(hit_paths_agree), format!("{outside_printed} grid hits are covered only by corrected readings"));
    }
    f.structures = dedup(found);
    classify(g, &mut f, &mut o)?;

    let computed = json!({
        "entries": reports,
        "grid_hits": f.grid_hits,
        "grid_examined": search.examined,
        "uncovered": f.uncovered.iter().take(5).collect::<Vec<_>>(),
        "abelian": f.abelian,
        "biinvariant": f.biinvariant,
    });
    let expected = if rows.is_empty() {
        json!({ "row": Value::Null, "grid_hits": 0 })
    } else {
        json!({
            "row": labels,
            "q": rows.iter().map(|r| r.q.iter().map(entry_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "templates": rows.iter().map(|r| r.templates.iter().map(entry_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    };
    Ok((o.record(TABLE, inst, computed, expected), f))
}

/// Abelian and bi-invariant structures among those found, each by two routes.
fn classify(g: &LieAlgebra, f: &mut ComplexFindings, o: &mut Outcome) -> Result<()> {
    for s in &f.structures {
        let a1 = is_abelian_subalgebra(g, &s.q);
        let a2 = is_abelian_structure(g, &s.j)?;
        let b1 = is_biinvariant(g, &s.j)?;
        let b2 = commutes_with_conjugate(g, &s.q);
        f.abelian_paths_agree &= a1 == a2;
        f.biinvariant_paths_agree &= b1 == b2;
        if a1 && a2 && f.abelian.is_none() {
            f.abelian = Some(format!("{} from {}", s.j, s.source));
        }
        if b1 && b2 && f.biinvariant.is_none() {
            f.biinvariant = Some(format!("{} from {}", s.j, s.source));
        }
    }
    if !f.abelian_paths_agree {
        o.raise(Status::Mismatch, "abelian test: [q,q] = 0 and [JX,JY] = [X,Y] disagree");
    }
    if !f.biinvariant_paths_agree {
        o.raise(Status::Mismatch, "bi-invariance test: J ad = ad J and [q, σq] = 0 disagree");
    }
    Ok(())
}
