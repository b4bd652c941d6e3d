use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn lieinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieinv")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn table_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn cohomology_of_rh3() {
    let o = lieinv(&["cohomology", "--case", "rh3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["betti"], serde_json::json!([1, 3, 4, 3, 1]));
    assert_eq!(v["classes"][1], "[e1][e2][e4]");
}

#[test]
fn catalog_lists_sixteen_families() {
    let o = lieinv(&["catalog", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o).as_array().unwrap().len(), 16);
}

#[test]
fn unknown_case_is_a_usage_error() {
    let o = lieinv(&["cohomology", "--case", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown case id"));
}

#[test]
fn parameter_out_of_range() {
    let o = lieinv(&["symplectic", "--case", "d4_lambda", "--params", "lambda=1/4"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn malformed_file_reports_the_line() {
    let f = table_file("dim 4\n[1,2] = 1*3\n[2,1] = 1*3\n");
    let o = lieinv(&["symplectic", "--file", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn jacobi_failure_stops_downstream_work() {
    let f = table_file("dim 3\n[1,2] = 1*3\n[1,3] = 1*1\n[2,3] = 1*2\n");
    let o = lieinv(&["cohomology", "--file", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Jacobi"));
    assert!(o.stdout.is_empty());
}

#[test]
fn symplectic_on_a_user_algebra() {
    let f = table_file("# Heisenberg plus a line\ndim 4\n[1,2] = 1*3\n");
    let o = lieinv(&["symplectic", "--file", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["exists"], true);
    assert_eq!(v["dim"], 5);
}

#[test]
fn symplectic_form_check() {
    let o = lieinv(&["symplectic", "--case", "r2p", "--form", "e13 - e24", "--json"]);
    let v = json(&o);
    assert_eq!(v["closed"], true);
    assert_eq!(v["symplectic"], true);
}

#[test]
fn complex_structure_check() {
    let o = lieinv(&["complex", "--case", "r2p", "--j", "e1->e3, e2->e4", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["integrable"], true);
    assert_eq!(v["integrable_by_eigenspace"], true);
}

#[test]
fn grid_search_on_n4_is_empty() {
    let o = lieinv(&["complex", "--case", "n4", "--json"]);
    assert_eq!(json(&o)["hits"], 0);
}

#[test]
fn kahler_pair_on_r2p() {
    let o = lieinv(&["kahler", "--case", "r2p", "--j", "e1->e3, e2->e4", "--json"]);
    let v = json(&o);
    assert_eq!(v["status"], "KAHLER");
    assert_eq!(v["signature"], "(2,2,0)");
}

#[test]
fn verify_needs_a_selection() {
    assert_eq!(code(&lieinv(&["verify"])), 2);
}

#[test]
fn strict_promotes_suspected_typos() {
    let args = ["verify", "--case", "d4_lambda", "--params", "lambda=2", "--table", "4.2", "--json"];
    let o = lieinv(&args);
    assert_eq!(code(&o), 0);
    let rec: Value = serde_json::from_str(String::from_utf8_lossy(&o.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(rec["status"], "PAPER_TYPO_SUSPECTED");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&lieinv(&strict)), 1);
}

#[test]
fn verify_records_match_single_case_commands() {
    let o = lieinv(&["verify", "--case", "r2p", "--json"]);
    assert_eq!(code(&o), 0);
    let recs: Vec<Value> = String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 6);
    for r in &recs {
        for field in ["table", "case", "params", "status", "computed", "expected", "notes"] {
            assert!(r.get(field).is_some(), "{field}");
        }
    }
    let sym = json(&lieinv(&["symplectic", "--case", "r2p", "--json"]));
    let rec = recs.iter().find(|r| r["table"] == "4.2").unwrap();
    assert_eq!(rec["computed"]["general_form"], sym["general_form"]);
    let coh = json(&lieinv(&["cohomology", "--case", "r2p", "--json"]));
    let rec = recs.iter().find(|r| r["table"] == "4.5").unwrap();
    assert_eq!(rec["computed"]["betti"], coh["betti"]);
}

#[test]
fn corrected_table_file_is_used() {
    let text = lieinv_core_tables().replace("condition = \"a12m34^2 + a14*a23\"", "condition = \"-a12m34^2 + a14*a23\"");
    assert!(text.contains("-a12m34^2"));
    let f = table_file(&text);
    let o = lieinv(&["verify", "--case", "d4_lambda", "--params", "lambda=2", "--table", "4.2", "--json", "--strict", "--tables", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

fn lieinv_core_tables() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/tables.toml")).unwrap()
}
