//! Subcommand bodies. Each returns the process exit status.

use std::path::PathBuf;

use serde_json::json;

use lieinv_core::cohomology::{cohomology as compute_cohomology, CochainComplex, Exactness};
use lieinv_core::complex::{
    grid_by_name, grid_search_subalgebras, is_abelian_structure, is_biinvariant, is_integrable, is_integrable_by_eigenspace,
    j_from_subalgebra, nijenhuis_defect, AlmostComplexStructure, DEFAULT_CAP,
};
use lieinv_core::forms::parse_form_of_degree;
use lieinv_core::kahler::{is_compatible, kahler_exists, metric_from};
use lieinv_core::lie::{catalog_build, default_grid, format_params, grid_instances, parse_bracket_table, parse_params, CaseId, Instance, LieAlgebra, Params};
use lieinv_core::symplectic::{exact_symplectic_family, is_nondegenerate, pfaffian, symplectic_exists};
use lieinv_core::tables::Tables;
use lieinv_core::verify::{verify_instances, Status, VerificationRecord};
use lieinv_core::{Error, Result};

use crate::{Target, EXIT_MISMATCH, EXIT_OK};

fn load(target: &Target) -> Result<LieAlgebra> {
    let g = match (&target.case, &target.file) {
        (Some(c), None) => {
            let case: CaseId = c.parse()?;
            let params = target.params.as_deref().map(parse_params).transpose()?.unwrap_or_default();
            catalog_build(case, &params)?
        }
        (None, Some(path)) => parse_bracket_table(&std::fs::read_to_string(path)?)?,
        _ => return Err(Error::MissingParameter { case: "target".into(), param: "--case or --file".into() }),
    };
    // downstream computations assume a Lie algebra
    g.ensure_lie()?;
    Ok(g)
}

fn require_dim4(g: &LieAlgebra) -> Result<()> {
    if g.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: g.dim() });
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

pub fn catalog(json: bool) -> Result<u8> {
    let rows: Vec<serde_json::Value> = CaseId::ALL
        .iter()
        .map(|&c| {
            json!({
                "case": c.as_str(),
                "label": c.label(),
                "params": c.param_names(),
                "range": c.range_description(),
                "grid": default_grid(c).iter().map(format_params).collect::<Vec<_>>(),
            })
        })
        .collect();
    if json {
        print_json(&json!(rows));
        return Ok(EXIT_OK);
    }
    println!("{:<16} {:<12} {:<32} grid", "case", "label", "range");
    for r in &rows {
        let grid: Vec<&str> = r["grid"].as_array().into_iter().flatten().filter_map(|v| v.as_str()).collect();
        println!("{:<16} {:<12} {:<32} {}", r["case"].as_str().unwrap_or(""), r["label"].as_str().unwrap_or(""), r["range"].as_str().unwrap_or(""), grid.join(" "));
    }
    Ok(EXIT_OK)
}

pub fn cohomology(target: &Target, json: bool) -> Result<u8> {
    let g = load(target)?;
    let r = compute_cohomology(&g)?;
    if json {
        print_json(&json!({
            "algebra": r.algebra,
            "betti": r.betti,
            "classes": (0..r.betti.len()).map(|k| r.class_labels(k)).collect::<Vec<_>>(),
        }));
        return Ok(EXIT_OK);
    }
    println!("{}: betti {:?}", g.name(), r.betti);
    for k in 0..r.betti.len() {
        println!("  H{k}: {}", r.class_labels(k));
    }
    Ok(EXIT_OK)
}

pub fn complex(target: &Target, j: Option<&str>, grid: &str, limit: usize, json: bool) -> Result<u8> {
    let g = load(target)?;
    if let Some(text) = j {
        let j = AlmostComplexStructure::parse(text, g.dim())?;
        let integrable = is_integrable(&g, &j)?;
        let by_eigenspace = is_integrable_by_eigenspace(&g, &j);
        let defect = nijenhuis_defect(&g, &j)?.map(|(a, b, v)| format!("N(e{}, e{}) = {}", a + 1, b + 1, lieinv_core::lie::format_vector(&v)));
        let abelian = is_abelian_structure(&g, &j)?;
        let biinvariant = is_biinvariant(&g, &j)?;
        if json {
            print_json(&json!({
                "j": j, "integrable": integrable, "integrable_by_eigenspace": by_eigenspace,
                "nijenhuis_defect": defect, "abelian": abelian, "biinvariant": biinvariant,
            }));
        } else {
            println!("J: {j}");
            println!("integrable: {integrable} (eigenspace route: {by_eigenspace})");
            if let Some(d) = &defect {
                println!("  {d}");
            }
            println!("abelian: {abelian}, bi-invariant: {biinvariant}");
        }
        return Ok(if integrable == by_eigenspace { EXIT_OK } else { EXIT_MISMATCH });
    }
    require_dim4(&g)?;
    let values = grid_by_name(grid).ok_or_else(|| Error::Invalid(format!("unknown grid `{grid}`")))?;
    let search = grid_search_subalgebras(&g, &values, DEFAULT_CAP);
    let hits: Vec<serde_json::Value> = search
        .hits
        .iter()
        .take(limit)
        .map(|q| json!({ "q": q.describe(), "j": j_from_subalgebra(q).map(|j| j.to_string()).unwrap_or_default() }))
        .collect();
    if json {
        print_json(&json!({ "grid": grid, "examined": search.examined, "truncated": search.truncated, "hits": search.hits.len(), "first": hits }));
    } else {
        println!("{}: {} complex subalgebras on the {grid} grid ({} candidates examined)", g.name(), search.hits.len(), search.examined);
        for h in &hits {
            println!("  {}  J: {}", h["q"].as_str().unwrap_or(""), h["j"].as_str().unwrap_or(""));
        }
    }
    Ok(EXIT_OK)
}

pub fn symplectic(target: &Target, exact: bool, form: Option<&str>, json: bool) -> Result<u8> {
    let g = load(target)?;
    require_dim4(&g)?;
    if let Some(text) = form {
        let w = parse_form_of_degree(text, 4, 2)?;
        let cx = CochainComplex::of(&g)?;
        let closed = cx.is_closed(&w);
        let primitive = match cx.is_exact(&w) {
            Ok(Exactness::Exact { primitive }) if closed => Some(primitive.to_string()),
            _ => None,
        };
        let pf = pfaffian(&w)?;
        let nondegenerate = is_nondegenerate(&w);
        if json {
            print_json(&json!({ "form": w.to_string(), "closed": closed, "exact_primitive": primitive, "pfaffian": pf.to_string(), "symplectic": closed && nondegenerate }));
        } else {
            println!("omega = {w}: closed {closed}, Pf = {pf}, symplectic {}", closed && nondegenerate);
            if let Some(p) = primitive {
                println!("  exact: omega = d({p})");
            }
        }
        return Ok(EXIT_OK);
    }
    let d = if exact { exact_symplectic_family(&g)? } else { symplectic_exists(&g)? };
    if json {
        print_json(&json!({
            "exact": exact,
            "exists": d.exists,
            "general_form": d.family.general_form(),
            "dim": d.family.dim(),
            "pfaffian": d.family.pfaffian().to_string(),
            "witness": d.witness.as_ref().map(|w| w.to_string()),
        }));
    } else {
        println!("{} {} 2-forms: {}", g.name(), if exact { "exact" } else { "closed" }, d.family.general_form());
        println!("Pf = {}", d.family.pfaffian());
        println!("{d}");
    }
    Ok(EXIT_OK)
}

pub fn kahler(target: &Target, j: &str, form: Option<&str>, json: bool) -> Result<u8> {
    let g = load(target)?;
    require_dim4(&g)?;
    let j = AlmostComplexStructure::parse(j, 4)?;
    if let Some(text) = form {
        let w = parse_form_of_degree(text, 4, 2)?;
        let closed = CochainComplex::of(&g)?.is_closed(&w);
        let compatible = is_compatible(&w, &j);
        let signature = if compatible && is_nondegenerate(&w) { metric_from(&w, &j).ok().map(|m| m.signature.to_string()) } else { None };
        if json {
            print_json(&json!({ "form": w.to_string(), "j": j, "closed": closed, "compatible": compatible, "signature": signature }));
        } else {
            println!("omega = {w}, J: {j}: closed {closed}, compatible {compatible}");
            if let Some(s) = signature {
                println!("  metric signature {s}");
            }
        }
        return Ok(EXIT_OK);
    }
    let r = kahler_exists(&g, &j)?;
    if json {
        print_json(&json!({
            "j": r.j,
            "integrable": r.integrable,
            "status": r.status,
            "general_form": r.family.general_form(),
            "witness": r.witness.as_ref().map(|w| w.to_string()),
            "signature": r.metric.as_ref().map(|m| m.signature.to_string()),
        }));
    } else {
        println!("J: {j}, integrable {}", r.integrable);
        println!("compatible closed forms: {}", r.family.general_form());
        match (&r.witness, &r.metric) {
            (Some(w), Some(m)) => println!("witness {w}, metric signature {}", m.signature),
            _ => println!("no nondegenerate compatible form"),
        }
    }
    Ok(EXIT_OK)
}

pub struct VerifyOptions {
    pub case: Option<String>,
    pub params: Option<String>,
    pub tables: Option<PathBuf>,
    pub table: Option<String>,
    pub json: bool,
    pub summary: bool,
    pub strict: bool,
}

fn params_text(r: &VerificationRecord) -> String {
    if r.params.is_empty() {
        return "-".into();
    }
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

pub fn verify(o: &VerifyOptions) -> Result<u8> {
    let tables = match &o.tables {
        Some(p) => Tables::load(p)?,
        None => Tables::embedded(),
    };
    let instances: Vec<Instance> = match &o.case {
        None => grid_instances(),
        Some(c) => {
            let case: CaseId = c.parse()?;
            match &o.params {
                Some(p) => {
                    let params: Params = parse_params(p)?;
                    let algebra = catalog_build(case, &params)?;
                    vec![Instance { case, params, algebra }]
                }
                None => grid_instances().into_iter().filter(|i| i.case == case).collect(),
            }
        }
    };
    let report = verify_instances(&tables, &instances)?;
    let records: Vec<&VerificationRecord> = report.records.iter().filter(|r| o.table.as_ref().is_none_or(|t| &r.table == t)).collect();
    if o.summary {
        print_json(&serde_json::to_value(&report.summary).expect("serializable"));
    } else if o.json {
        for r in &records {
            println!("{}", serde_json::to_string(r).expect("serializable"));
        }
    } else {
        println!("{:<6} {:<16} {:<22} {:<22} notes", "table", "case", "params", "status");
        for r in &records {
            println!("{:<6} {:<16} {:<22} {:<22} {}", r.table, r.case, params_text(r), r.status.to_string(), r.notes);
        }
        println!();
        for s in [Status::Match, Status::PaperTypoSuspected, Status::Mismatch, Status::Skipped] {
            println!("{s}: {}", records.iter().filter(|r| r.status == s).count());
        }
    }
    let failing = records.iter().any(|r| r.status == Status::Mismatch || (o.strict && r.status == Status::PaperTypoSuspected));
    Ok(if failing { EXIT_MISMATCH } else { EXIT_OK })
}
