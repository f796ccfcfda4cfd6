use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn aqar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqar")).args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Parses stdout and checks it against the published schema.
fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
    v
}

fn claim<'a>(v: &'a Value, id: &str) -> &'a Value {
    v["claims"].as_array().unwrap().iter().find(|c| c["claim_id"] == id).unwrap_or_else(|| panic!("no claim {id}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aqar-cli-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn census_example() {
    let out = aqar(&["census", "--p", "3", "--q", "2", "--r", "5", "--alpha", "1", "--beta", "1", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["results"]["count"], 2);
    assert_eq!(v["bounds"][0]["verdict"], "LE");
    assert_eq!(v["bounds"][0]["bound"]["formula_id"], "variety-count");
    assert_eq!(claim(&v, "variety-count-bound")["status"], "verified");
    assert_eq!(v["results"]["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn construct_example_round_trips_through_verify() {
    let dir = scratch("construct");
    let file = dir.join("g.json");
    let out = aqar(&["construct-primitive", "--q", "2", "--r", "7", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["results"]["degree"], 8);
    assert_eq!(v["results"]["order"], "56");

    let out = aqar(&["verify-primitive", "--input", file.to_str().unwrap(), "--q", "2", "--r", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(claim(&v, "primitive-structure")["status"], "verified");
    assert_eq!(v["results"]["order"], 56);
}

#[test]
fn classify_gl_reports_known_discrepancy() {
    let out = aqar(&["classify-gl", "--alpha", "3", "--s", "2", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["results"]["count"], 1);
    let c = claim(&v, "maximal-abelian-nonexistence");
    assert_eq!(c["status"], "violated");
    assert_eq!(c["known_discrepancy"], true);
    assert!(c["witness"].as_str().unwrap().contains("order 3"));
    assert_eq!(claim(&v, "maximal-abelian-single-class")["status"], "verified");
    assert_eq!(v["status"], "verified");
}

#[test]
fn exceeding_a_bound_exits_two() {
    let out = aqar(&["check-bounds", "--formula", "transitive-count", "--n", "4", "--count", "884737"]);
    assert_eq!(out.status.code(), Some(2));
    let v = report(&out);
    assert_eq!(v["bounds"][0]["verdict"], "GT");
    assert_eq!(v["bounds"][0]["bound"]["exact"], "884736");
    assert_eq!(v["status"], "violated");

    let out = aqar(&["check-bounds", "--formula", "transitive-count", "--n", "4", "--count", "884736"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn degenerate_bound_is_flagged() {
    let out = aqar(&[
        "check-bounds",
        "--formula",
        "variety-count",
        "--p",
        "2",
        "--q",
        "3",
        "--r",
        "5",
        "--alpha",
        "0",
        "--beta",
        "0",
        "--gamma",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["results"]["bound"]["flags"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"]["bound"]["log2"]["lower"].as_f64().unwrap().round(), -1.0);
}

#[test]
fn errors_exit_one() {
    let out = aqar(&["census", "--p", "4", "--q", "2", "--r", "5", "--alpha", "1", "--beta", "1", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = aqar(&["check-bounds", "--formula", "linear-order", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--q"));
    let out = aqar(&["no-such-command"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["selftest", "--jobs", "1", "--seed", "7"];
    let a = aqar(&args);
    let b = aqar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    report(&a);
}

#[test]
fn lowered_limits_skip_instead_of_failing() {
    let out = aqar(&["selftest", "--max-order", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    let skipped = v["results"]["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["items"].as_array().unwrap())
        .filter(|i| i["outcome"] == "skip")
        .count();
    assert!(skipped > 0);
}

#[test]
fn census_tables_are_written() {
    let dir = scratch("tables");
    let out = aqar(&[
        "census",
        "--p",
        "2",
        "--q",
        "3",
        "--r",
        "5",
        "--alpha",
        "2",
        "--beta",
        "1",
        "--gamma",
        "0",
        "--tables",
        dir.to_str().unwrap(),
        "--reverse",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for id in ["G1", "G2"] {
        let g: aqar_core::groupmodel::CayleyGroup =
            serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{id}.json"))).unwrap()).unwrap();
        assert_eq!(g.order(), 12);
    }
}

#[test]
fn text_format_and_timing() {
    let out = aqar(&[
        "census", "--p", "5", "--q", "2", "--r", "3", "--alpha", "0", "--beta", "1", "--gamma", "1", "--format",
        "text", "--timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("count = 1"));
    assert!(text.contains("status: verified"));
    assert!(text.contains("elapsed:"));
    let out = aqar(&["census", "--p", "5", "--q", "2", "--r", "3", "--alpha", "0", "--beta", "1", "--gamma", "1"]);
    assert!(report(&out).get("timing").is_none());
}
