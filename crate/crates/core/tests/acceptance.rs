//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Outcomes are pinned below. A FAIL caused by a table entry that both
//! computation routes contradict is expected and marked as such; the process
//! exits nonzero only when an outcome differs from its pin or when any record
//! is a MISMATCH (the two routes disagree with each other).

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use lieinv_core::cohomology::CochainComplex;
use lieinv_core::complex::{
    grid_search_subalgebras, is_integrable, is_integrable_by_eigenspace, j_from_subalgebra, small_grid, AlmostComplexStructure,
};
use lieinv_core::forms::{ce_differential, ce_differential_pointwise, differential_matrix, parse_form};
use lieinv_core::kahler::{compatible_family, compatible_family_by_intersection, metric_from};
use lieinv_core::lie::{catalog_build, grid_instances, CaseId, Instance, Params};
use lieinv_core::linalg::{Matrix, Scalar};
use lieinv_core::symplectic::{closed_two_forms, closed_two_forms_pointwise, exact_symplectic_family, exact_two_forms, symplectic_exists};
use lieinv_core::tables::{rows_for, FormRow, Tables};
use lieinv_core::verify::{printed_family, verify_all, Report, Status, VerificationRecord};

/// All comparisons are exact rational arithmetic.
const TOLERANCE: &str = "exact (zero tolerance)";
const RANDOM_J_PER_CASE: usize = 200;
const SEED: u64 = 0x5eed_4d1e;
const MIN_INSTANCES: usize = 40;

/// Pinned outcomes, criterion 1 to 10.
const PINNED: [bool; 10] = [false, true, false, false, true, true, true, false, true, true];

struct Outcome {
    pass: bool,
    detail: String,
    /// Every failing item is a table entry contradicted by two agreeing routes.
    confirmed: bool,
}

impl Outcome {
    fn from_failures(what: &str, failures: Vec<(String, bool)>, extra: String) -> Self {
        let pass = failures.is_empty();
        let confirmed = failures.iter().all(|(_, c)| *c);
        let detail = if pass {
            extra
        } else {
            let shown: Vec<&str> = failures.iter().take(6).map(|(s, _)| s.as_str()).collect();
            let more = if failures.len() > shown.len() { format!(" (+{} more)", failures.len() - shown.len()) } else { String::new() };
            format!("{extra}; {} {what}: {}{more}", failures.len(), shown.join("; "))
        };
        Outcome { pass, detail, confirmed }
    }
}

fn typo(rec: &VerificationRecord) -> bool {
    rec.status == Status::PaperTypoSuspected
}

fn records<'a>(report: &'a Report, table: &'a str, instances: &[Instance]) -> Vec<&'a VerificationRecord> {
    let recs: Vec<&VerificationRecord> = report.records_for(table).collect();
    assert_eq!(recs.len(), instances.len(), "one record per instance in {table}");
    for (r, i) in recs.iter().zip(instances) {
        assert_eq!(r.case, i.case.as_str(), "record order follows the grid");
    }
    recs
}

fn row_labels(rec: &VerificationRecord) -> Vec<String> {
    match &rec.expected["row"] {
        Value::Array(a) => a.iter().filter_map(|v| v.as_str().map(str::to_string)).collect(),
        Value::String(s) => vec![s.clone()],
        _ => vec![],
    }
}

fn criterion_1(report: &Report, instances: &[Instance]) -> Outcome {
    let families: BTreeSet<CaseId> = instances.iter().map(|i| i.case).collect();
    let mut failures = Vec::new();
    for (inst, rec) in instances.iter().zip(records(report, "2.1", instances)) {
        let g = &inst.algebra;
        if !g.antisymmetry_defects().is_empty() || !g.jacobi_defect().is_empty() {
            failures.push((format!("{}: antisymmetry or Jacobi", inst.name()), false));
        } else if rec.status != Status::Match {
            failures.push((format!("{}: {}", inst.name(), rec.notes), typo(rec)));
        }
    }
    if families.len() != 16 || instances.len() < MIN_INSTANCES {
        failures.push((format!("{} families, {} instances", families.len(), instances.len()), false));
    }
    Outcome::from_failures("instances differ", failures, format!("{} families, {} instances", families.len(), instances.len()))
}

fn criterion_2(instances: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in instances {
        for k in 0..4 {
            let prod = differential_matrix(&inst.algebra, k + 1).mul(&differential_matrix(&inst.algebra, k));
            checked += prod.cols();
            if !prod.is_zero() {
                failures.push((format!("{}: d^2 != 0 in degree {k}", inst.name()), false));
            }
        }
    }
    let g = catalog_build(CaseId::R2p, &Params::new()).expect("r'2");
    let worked = [("e13", "-e124"), ("e14", "e123"), ("e23", "-e123"), ("e24", "-e124"), ("e34", "-2*e134")];
    for (w, dw) in worked {
        let w = parse_form(w, 4).expect("literal");
        let dw = parse_form(dw, 4).expect("literal");
        let a = ce_differential(&g, &w);
        let b = ce_differential_pointwise(&g, &w);
        if a != dw || b != dw {
            failures.push((format!("r'2: d({w}) = {a} (pointwise {b}), expected {dw}"), false));
        }
    }
    Outcome::from_failures("differentials differ", failures, format!("d^2 = 0 on {checked} basis forms; 5 r'2 differentials reproduced"))
}

fn criterion_3(report: &Report, tables: &Tables, instances: &[Instance]) -> Outcome {
    let flagged: BTreeSet<&str> = tables.table_4_5.iter().filter(|r| r.flagged).map(|r| r.label.as_str()).collect();
    let mut failures = Vec::new();
    let mut flagged_reported = 0;
    for (inst, rec) in instances.iter().zip(records(report, "4.5", instances)) {
        let cx = CochainComplex::of(&inst.algebra).expect("complex");
        let pw = CochainComplex::pointwise(&inst.algebra).expect("complex");
        let betti = cx.betti_numbers();
        let second: Vec<usize> = (0..=4).map(|k| pw.betti_fraction_free(k)).collect();
        let euler: i64 = betti.iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
        if betti != second || betti[0] != 1 || euler != 0 || betti[1] != 4 - inst.algebra.derived_subalgebra().len() {
            failures.push((format!("{}: betti {betti:?} vs {second:?}", inst.name()), false));
            continue;
        }
        if matches!(rec.status, Status::Match | Status::Skipped) {
            continue;
        }
        let labels = row_labels(rec);
        if !labels.is_empty() && labels.iter().all(|l| flagged.contains(l.as_str())) && typo(rec) {
            flagged_reported += 1;
            continue;
        }
        let label = if labels.is_empty() { "no row".to_string() } else { labels.join(",") };
        failures.push((format!("{} [{label}]: {}", inst.name(), rec.notes), typo(rec)));
    }
    Outcome::from_failures(
        "unflagged instances differ from the table",
        failures,
        format!("b0 = 1, Euler 0, b1 = codim g' on {} instances; {flagged_reported} flagged-row records reported", instances.len()),
    )
}

fn criterion_4(report: &Report, instances: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let (mut entries, mut omitted) = (0, 0);
    for (inst, rec) in instances.iter().zip(records(report, "3.3", instances)) {
        if rec.status == Status::Skipped {
            continue;
        }
        let confirmed = typo(rec);
        for e in rec.computed["entries"].as_array().into_iter().flatten() {
            entries += 1;
            let kind = e["kind"].as_str().unwrap_or_default();
            let text = format!("{} {kind} <{}, {}>", inst.name(), e["u"].as_str().unwrap_or_default(), e["v"].as_str().unwrap_or_default());
            let points = e["points"].as_u64().unwrap_or(0);
            if !e["passes"].as_bool().unwrap_or(false) {
                failures.push((format!("{text} fails at {} of {points} points", e["failures"]), confirmed));
            } else if kind == "template" && points < 5 {
                failures.push((format!("{text}: {points} samples"), false));
            }
            if e["violating_passing"].as_u64().unwrap_or(0) > 0 {
                failures.push((format!("{text}: {} of {} violating points pass", e["violating_passing"], e["violating"]), confirmed));
            }
        }
        let lambda_pm1 = inst.params.get("lambda").is_some_and(|l| l.abs() == Scalar::one());
        let must_be_empty = matches!(inst.case, CaseId::N4 | CaseId::R3) || (inst.case == CaseId::R3Lambda && !lambda_pm1);
        if must_be_empty && rec.expected["row"].is_null() {
            omitted += 1;
            let hits = rec.computed["grid_hits"].as_u64().unwrap_or(0);
            if hits > 0 {
                failures.push((format!("{}: grid search finds {hits}", inst.name()), confirmed));
            }
        }
    }
    Outcome::from_failures("entries fail", failures, format!("{entries} entries checked; grid search empty on {omitted} omitted instances"))
}

fn random_j(rng: &mut ChaCha8Rng) -> AlmostComplexStructure {
    let j0 = Matrix::from_fn(4, 4, |r, c| match (r, c) {
        (1, 0) | (3, 2) => Scalar::one(),
        (0, 1) | (2, 3) => -Scalar::one(),
        _ => Scalar::zero(),
    });
    loop {
        let x = Matrix::from_fn(4, 4, |_, _| Scalar::from_integer(rng.random_range(-2..=2)));
        if let Some(inv) = x.inverse() {
            return AlmostComplexStructure::new(x.mul(&j0).mul(&inv)).expect("conjugate of J0 squares to -1");
        }
    }
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let (mut total, mut integrable) = (0, 0);
    for inst in instances {
        let g = &inst.algebra;
        let mut js: Vec<AlmostComplexStructure> = (0..RANDOM_J_PER_CASE).map(|_| random_j(&mut rng)).collect();
        // integrable ones too, so both answers are exercised
        js.extend(grid_search_subalgebras(g, &small_grid(), 20).hits.iter().filter_map(|q| j_from_subalgebra(q).ok()));
        for j in &js {
            total += 1;
            let a = is_integrable(g, j).expect("dimension 4");
            integrable += a as usize;
            if a != is_integrable_by_eigenspace(g, j) {
                failures.push((format!("{}: {j}", inst.name()), false));
            }
        }
    }
    Outcome::from_failures("structures disagree", failures, format!("{total} structures ({integrable} integrable), seed {SEED:#x}"))
}

/// Closed (or exact) family against the printed rows of one table.
fn family_check(
    report: &Report,
    table: &str,
    rows: &[FormRow],
    instances: &[Instance],
    exact: bool,
) -> (Vec<(String, bool)>, BTreeSet<String>, usize) {
    let mut failures = Vec::new();
    let mut typo_rows = BTreeSet::new();
    let mut yes = 0;
    for (inst, rec) in instances.iter().zip(records(report, table, instances)) {
        if inst.case == CaseId::A4 {
            continue;
        }
        let g = &inst.algebra;
        let decision = if exact { exact_symplectic_family(g) } else { symplectic_exists(g) }.expect("dimension 4");
        let selected = rows_for(rows, inst.case, &inst.params, |r| (&r.case, &r.when)).expect("row conditions");
        let Some(row) = selected.first() else {
            if decision.exists || !decision.zero_quadratic {
                failures.push((format!("{}: no row, but {decision}", inst.name()), typo(rec)));
            }
            continue;
        };
        if !decision.exists {
            failures.push((format!("{}: row {}, but {decision}", inst.name(), row.label), typo(rec)));
            continue;
        }
        yes += 1;
        let printed = printed_family(&row.omega, &row.condition, &inst.params).expect("printed row");
        let family = if exact { exact_two_forms(g) } else { closed_two_forms(g) }.expect("dimension 4");
        let second = closed_two_forms_pointwise(g).expect("dimension 4");
        if !family.same_span_as(&printed.forms) {
            let routes_agree = exact || family.same_span_as(second.basis());
            if row.flagged && typo(rec) && routes_agree {
                typo_rows.insert(row.label.clone());
            } else {
                failures.push((format!("{} [{}]: span {}", inst.name(), row.label, family.general_form()), typo(rec) && routes_agree));
            }
        }
    }
    (failures, typo_rows, yes)
}

fn criterion_6(report: &Report, tables: &Tables, instances: &[Instance]) -> Outcome {
    let (mut failures, typo_rows, yes) = family_check(report, "4.2", &tables.table_4_2, instances, false);
    if typo_rows.len() != 2 {
        failures.push((format!("{} suspected-typo span rows: {typo_rows:?}", typo_rows.len()), false));
    }
    let rows: Vec<&str> = typo_rows.iter().map(String::as_str).collect();
    Outcome::from_failures("instances differ", failures, format!("{yes} YES instances match their rows; typo rows reported: {}", rows.join(", ")))
}

fn criterion_7(report: &Report, tables: &Tables, instances: &[Instance]) -> Outcome {
    let (mut failures, typo_rows, yes) = family_check(report, "4.3", &tables.table_4_3, instances, true);
    if tables.table_4_3.len() != 6 {
        failures.push((format!("{} rows", tables.table_4_3.len()), false));
    }
    for r in typo_rows {
        failures.push((format!("{r}: span differs"), true));
    }
    Outcome::from_failures("instances differ", failures, format!("{} rows, {yes} YES instances, all others NO", tables.table_4_3.len()))
}

fn criterion_8(report: &Report, tables: &Tables, instances: &[Instance]) -> Outcome {
    let recs = records(report, "5.1", instances);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for a in &report.summary.kahler_rows {
        let row = &tables.table_5_1[a.row];
        if a.instances.is_empty() {
            failures.push((format!("{}: no instance", row.label), false));
        }
        for name in &a.instances {
            let k = instances.iter().position(|i| &i.name() == name).expect("assigned instance is on the grid");
            let (inst, rec) = (&instances[k], recs[k]);
            for s in &row.structures {
                pairs += 1;
                let j = AlmostComplexStructure::parse(&s.j, 4).expect("printed J");
                let fam = compatible_family(&inst.algebra, &j).expect("dimension 4");
                let routes_agree = fam.same_span_as(compatible_family_by_intersection(&inst.algebra, &j).expect("dimension 4").basis())
                    && is_integrable(&inst.algebra, &j).expect("dimension 4") == is_integrable_by_eigenspace(&inst.algebra, &j);
                let printed = printed_family(&s.omega, &s.condition, &inst.params).expect("printed row");
                let tag = format!("{} [{} {}]", name, row.label, s.name);
                let confirmed = routes_agree && typo(rec);
                if !is_integrable(&inst.algebra, &j).expect("dimension 4") {
                    failures.push((format!("{tag}: J not integrable"), confirmed));
                }
                if !fam.same_span_as(&printed.forms) {
                    failures.push((format!("{tag}: family {}", fam.general_form()), confirmed));
                }
                match fam.witness() {
                    None => failures.push((format!("{tag}: no witness"), confirmed)),
                    Some(w) => match metric_from(&w, &j) {
                        Ok(m) if m.phi.is_symmetric() && m.is_j_invariant(&j) => {}
                        _ => failures.push((format!("{tag}: metric not symmetric and J-invariant"), false)),
                    },
                }
            }
        }
    }
    let af = &report.summary.affine;
    if !(af.matches && af.routes_agree && af.j1_drops_a12) {
        failures.push((format!("r'2: solvable at {:?}, j1 drops a12 {}", af.solvable, af.j1_drops_a12), false));
    }
    Outcome::from_failures(
        "structures differ",
        failures,
        format!("{pairs} (row, instance, J) checks; J_mu,nu solvable only at {:?} of {} points; a12 = 0 forced for J1", af.solvable, af.points),
    )
}

fn criterion_9(report: &Report) -> Outcome {
    let c = &report.summary.cross;
    let n4 = c.symplectic_not_complex.iter().any(|n| n == "n4");
    let pass = n4 && !c.complex_not_symplectic.is_empty() && !c.complex_symplectic_not_kahler.is_empty();
    let detail = format!(
        "symplectic only: {}; complex only: {}; both, no Kähler pair: {}",
        c.symplectic_not_complex.join(", "),
        c.complex_not_symplectic.len(),
        c.complex_symplectic_not_kahler.iter().map(|(n, t)| format!("{n} ({t} J tested)")).collect::<Vec<_>>().join(", ")
    );
    Outcome { pass, detail, confirmed: false }
}

fn criterion_10(report: &Report) -> Outcome {
    let r = &report.summary.special;
    let pass = r.abelian_match && r.biinvariant_match && r.r400_isomorphic_to_rr30 && !r.ambiguity.is_empty();
    let detail = format!("abelian: {}; bi-invariant: {}; r_{{4,0,0}} reported as ambiguous", r.abelian_found.join(", "), r.biinvariant_found.join(", "));
    Outcome { pass, detail, confirmed: false }
}

fn main() -> ExitCode {
    let tables = Tables::embedded();
    let instances = grid_instances();
    let report = verify_all(&tables).expect("verification runs");
    let titles = [
        "catalog soundness",
        "differential soundness",
        "cohomology",
        "complex structures",
        "integrability equivalence",
        "symplectic",
        "exact symplectic",
        "Kähler",
        "cross-classification",
        "abelian and bi-invariant structures",
    ];
    let outcomes = [
        criterion_1(&report, &instances),
        criterion_2(&instances),
        criterion_3(&report, &tables, &instances),
        criterion_4(&report, &instances),
        criterion_5(&instances),
        criterion_6(&report, &tables, &instances),
        criterion_7(&report, &tables, &instances),
        criterion_8(&report, &tables, &instances),
        criterion_9(&report),
        criterion_10(&report),
    ];
    println!("tolerance: {TOLERANCE}");
    let mut ok = true;
    for (n, (o, title)) in outcomes.iter().zip(titles).enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let why = if !o.pass && o.confirmed { " [table defect, confirmed by two paths]" } else { "" };
        println!("{tag} criterion {} ({title}): {}{why}", n + 1, o.detail);
        if o.pass != PINNED[n] || (!o.pass && !o.confirmed) {
            ok = false;
            println!("  unexpected: pinned {}", if PINNED[n] { "PASS" } else { "FAIL" });
        }
    }
    let mismatches = report.count(Status::Mismatch);
    if mismatches > 0 {
        ok = false;
        println!("unexpected: {mismatches} MISMATCH records");
    }
    if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
