use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn starcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn assert_valid(schema: &str, instance: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{schema}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

fn assert_certificate(out: &Output, report_schema: &str) -> Value {
    let doc = json(out);
    assert_valid("run-manifest", &doc["manifest"]);
    assert_valid(report_schema, &doc["report"]);
    doc
}

#[test]
fn shipped_schemas_are_current() {
    for name in [
        "run-manifest",
        "verification-report",
        "domination-report",
        "component-census",
        "implicit-census",
        "matrix",
    ] {
        let out = starcodes(&["schema", name]);
        assert!(out.status.success());
        let shipped = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
        assert_eq!(stdout(&out), shipped, "regenerate schemas/{name}.schema.json");
    }
}

#[test]
fn build_exports() {
    let out = starcodes(&["build", "--k", "2", "--ell", "2", "--format", "edges"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 6);

    let out = starcodes(&["build", "--k", "2", "--ell", "3", "--format", "graph6"]);
    assert_eq!(stdout(&out), "S???????EOS_c_WOIC@__BO?I_?K_?B_?\n");

    let out = starcodes(&["build", "--k", "2", "--ell", "2", "--format", "dot", "--color-vertices"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph ST_2_2 {"), "{dot}");
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn build_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = starcodes(&["build", "--k", "3", "--ell", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 90 * 4 / 2);
}

#[test]
fn build_budget_and_census() {
    let out = starcodes(&["build", "--k", "6", "--ell", "2", "--budget", "1000000"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--census"), "{err}");

    let out = starcodes(&["build", "--k", "6", "--ell", "2", "--census"]);
    assert!(out.status.success());
    let doc = assert_certificate(&out, "implicit-census");
    assert_eq!(doc["report"]["vertices"], 7_484_400);
    assert_eq!(doc["report"]["regular"], true);
}

#[test]
fn io_errors_exit_one() {
    let out = starcodes(&["build", "--k", "2", "--ell", "2", "--out", "/nonexistent/dir/g.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_exit_codes_and_reports() {
    let out = starcodes(&["verify", "thm1", "--k", "3", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = assert_certificate(&out, "verification-report");
    assert_eq!(doc["report"]["passed"], true);
    for (name, sub) in doc["report"]["details"].as_object().unwrap() {
        if name.starts_with("S_") && sub.get("histogram").is_some() {
            assert_valid("domination-report", sub);
        }
    }

    let out = starcodes(&["verify", "thm2-partition", "--k", "2", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = assert_certificate(&out, "verification-report");
    assert_eq!(doc["report"]["histograms"]["multiplicity"], serde_json::json!({"2": 20}));
    assert!(!doc["report"]["counterexamples"].as_array().unwrap().is_empty());

    let out = starcodes(&["verify", "thm2-decomp", "--k", "3", "--ell", "3", "--i", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = assert_certificate(&out, "verification-report");
    let report = &doc["report"];
    assert!(report["flags"].as_array().unwrap().contains(&"formula_mismatch".into()));
    assert_eq!(report["details"]["census"]["component_count"], 63);
    assert_valid("component-census", &report["details"]["census"]);

    let out = starcodes(&["verify", "nope", "--k", "2", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = starcodes(&["verify", "thm2-almost", "--k", "2", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_claim_certificate_validates() {
    for claim in [
        "thm1",
        "cor2",
        "cor3",
        "cor5",
        "thm2-eset",
        "thm2-partition",
        "thm2-decomp",
        "thm2-almost",
        "girth",
    ] {
        let out = starcodes(&["verify", claim, "--k", "2", "--ell", "3"]);
        assert!(matches!(out.status.code(), Some(0 | 3)), "{claim}");
        assert_certificate(&out, "verification-report");
    }
    let out = starcodes(&["verify", "thm2-total-coloring", "--k", "3", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_certificate(&out, "verification-report");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify", "cor3", "--k", "3", "--ell", "3"];
    assert_eq!(starcodes(&args).stdout, starcodes(&args).stdout);
    let args = ["matrix", "--max-k", "3", "--max-ell", "2", "--format", "json"];
    assert_eq!(starcodes(&args).stdout, starcodes(&args).stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&starcodes(&["verify", "girth", "--k", "2", "--ell", "3"]));
    assert!(plain["manifest"]["wall_time_ms"].is_null());
    let timed = json(&starcodes(&["verify", "girth", "--k", "2", "--ell", "3", "--timing"]));
    assert!(timed["manifest"]["wall_time_ms"].is_u64());
    assert_eq!(plain["report"], timed["report"]);
}

#[test]
fn decode_examples() {
    let out = starcodes(&["decode", "100122", "--code", "S", "--i", "0"]);
    assert_eq!(stdout(&out), "010122\n001122\n");
    let out = starcodes(&["decode", "010122", "--code", "S", "--i", "0"]);
    assert_eq!(stdout(&out), "010122\n");
    let out = starcodes(&["decode", "120120120", "--code", "S", "--i", "0", "--k", "3", "--ell", "3"]);
    assert_eq!(stdout(&out), "021120120\n020121120\n020120121\n");
    let out = starcodes(&["decode", "011100", "--code", "Sigma", "--i", "5"]);
    assert_eq!(stdout(&out), "011100\n");
}

#[test]
fn decode_rejects_invalid_words() {
    let out = starcodes(&["decode", "0011", "--code", "S", "--i", "0", "--k", "2", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("symbol 0 occurs 2 times"));
    let out = starcodes(&["decode", "01x1", "--code", "S", "--i", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_listing() {
    let out = starcodes(&["code", "--k", "2", "--ell", "3", "--code", "Sigma", "--i", "5"]);
    let mut words: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    words.sort();
    assert_eq!(
        words,
        ["001110", "010110", "011010", "011100", "100011", "100101", "101001", "110001"]
    );
}

#[test]
fn decompose_exports() {
    let dir = tempfile::tempdir().unwrap();
    let comps = dir.path().join("components.txt");
    let wits = dir.path().join("witnesses.json");
    let out = starcodes(&[
        "decompose",
        "--k",
        "3",
        "--ell",
        "2",
        "--components-out",
        comps.to_str().unwrap(),
        "--witnesses-out",
        wits.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = assert_certificate(&out, "component-census");
    assert_eq!(doc["report"]["component_count"], 12);
    let text = std::fs::read_to_string(comps).unwrap();
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 12);
    assert!(blocks.iter().all(|b| b.lines().count() == 6));
    let maps: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(wits).unwrap()).unwrap();
    assert_eq!(maps.len(), 12);
    assert!(maps.iter().all(|m| m.as_object().is_some_and(|m| m.len() == 6)));
}

#[test]
fn matrix_outputs() {
    let out = starcodes(&["matrix", "--max-k", "2", "--max-ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout(&out);
    assert!(table.starts_with("claim"));
    assert_eq!(table.lines().count(), 11);

    let out = starcodes(&["matrix", "--max-k", "3", "--max-ell", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = assert_certificate(&out, "matrix");
    let instances = doc["report"]["instances"].as_array().unwrap();
    for kl in [[2, 2], [3, 2], [2, 3], [3, 3]] {
        assert!(instances.contains(&serde_json::json!(kl)));
    }

    let out = starcodes(&["matrix", "--max-k", "4", "--max-ell", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["report"]["instances"].as_array().unwrap().contains(&serde_json::json!([4, 2])));
}
