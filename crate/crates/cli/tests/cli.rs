mod common;

use std::path::PathBuf;

use common::{assert_valid, json, run, schema, stdout, strip_timing};

#[test]
fn verify_known_value_at_30_digits() {
    let o = run(&["verify", "eq-1.1", "--digits", "30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_valid(&schema("verification-report.schema.json"), &v);
    let r = &v["records"][0];
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["digits"], 30);
    assert!(r["rhs"].as_str().unwrap().starts_with("-5.00000000000000000000000000000e0"));
    // `mid ± rad` with both parts below 1e-29 in magnitude.
    let diff = r["difference"].as_str().unwrap();
    let (mid, rad) = diff.split_once(" ± ").unwrap();
    let mid: f64 = mid.parse().unwrap();
    let rad: f64 = rad.parse().unwrap();
    assert!(mid.abs() + rad < 1e-29, "{diff}");
}

#[test]
fn verify_matches_golden_report_modulo_timing() {
    let o = run(&["verify", "eq-1.1", "--digits", "30", "--format", "json"]);
    let mut got = json(&o);
    strip_timing(&mut got);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify-eq-1.1-d30.json");
    let want: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn verify_h4k_closed_form() {
    let o = run(&["verify", "thm1-H4k", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("PASS  thm1-H4k"), "{text}");
    // -151 - (80/3) log 2
    assert!(text.contains("rhs  -1.6948392481493187491779285657"), "{text}");
}

#[test]
fn unknown_id_is_a_usage_error() {
    let o = run(&["verify", "no-such-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-id"));
}

#[test]
fn digits_below_ten_rejected() {
    assert_eq!(run(&["verify", "eq-1.1", "--digits", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify-all", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn digits_from_environment() {
    let o = common::bin().args(["verify", "eq-1.2", "--format", "json"]).env("BINOM4K_DIGITS", "12").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["records"][0]["digits"], 12);
}

#[test]
fn verify_all_json_validates_and_passes() {
    let o = run(&["verify-all", "--digits", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_valid(&schema("verification-report.schema.json"), &v);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 34);
    assert!(records.iter().all(|r| r["status"] == "PASS"));
}

#[test]
fn verify_all_csv_has_header_and_rows() {
    let o = run(&["verify-all", "--digits", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "id,status,lhs,rhs,difference,digits,elapsed_ms,provenance,message");
    assert_eq!(lines.count(), 34);
}

#[test]
fn failing_catalog_entry_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let exported = stdout(&run(&["catalog", "export"]));
    let mut cat: serde_json::Value = serde_json::from_str(&exported).unwrap();
    let entries = cat["entries"].as_array_mut().unwrap();
    entries.retain(|e| e["id"] == "eq-1.1");
    entries[0]["rhs"] = serde_json::json!({ "rat": "-4" });
    std::fs::write(&path, serde_json::to_string_pretty(&cat).unwrap()).unwrap();
    let o = run(&["verify-all", "--digits", "20", "--catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL  eq-1.1"));
}

#[test]
fn malformed_catalog_is_a_usage_error_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"version\": 1,\n  \"entries\": [\n    {\n      \"id\": \"a\"\n    }\n  ]\n}\n").unwrap();
    let o = run(&["catalog", "list", "--catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn exported_catalog_validates() {
    let o = run(&["catalog", "export"]);
    assert_eq!(o.status.code(), Some(0));
    assert_valid(&schema("catalog.schema.json"), &json(&o));
}

#[test]
fn catalog_list_and_show() {
    let list = stdout(&run(&["catalog", "list"]));
    assert_eq!(list.lines().count(), 34);
    assert!(list.lines().any(|l| l.starts_with("thm1-H4k")));
    let o = run(&["catalog", "show", "eq-1.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rhs"]["rat"], "-5");
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn exact_checks_subset_and_schema() {
    let o = run(&["exact-checks", "--only", "lagrange", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_valid(&schema("exact-report.schema.json"), &v);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "lagrange");

    let o = run(&["exact-checks", "--only", "antiderivative-g3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS  antiderivative-g3"));

    let o = run(&["exact-checks", "--only", "closure", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);

    assert_eq!(run(&["exact-checks", "--only", "nothing-here"]).status.code(), Some(2));
}

#[test]
fn crosscheck_contract() {
    let o = run(&["crosscheck", "--j", "1", "--x", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_valid(&schema("crosscheck.schema.json"), &v);
    assert_eq!(v["quadrature"], "0 ± 0");
    assert_eq!(v["series"], "0 ± 0");

    let o = run(&["crosscheck", "--j", "2", "--x", "1/16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "PASS");

    assert_eq!(run(&["crosscheck", "--j", "2", "--x", "1/20"]).status.code(), Some(2));
    assert_eq!(run(&["crosscheck", "--j", "5", "--x", "1/16"]).status.code(), Some(2));
    assert_eq!(run(&["crosscheck", "--j", "1", "--x", "1/8"]).status.code(), Some(2));
    assert_eq!(run(&["crosscheck", "--j", "1", "--x", "abc"]).status.code(), Some(2));
}

#[test]
fn eval_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    // Σ C(4k,k) (22k^2-92k+11)/16^k = -5
    std::fs::write(
        &path,
        r#"{ "x": "1/16", "binomial_power": 1, "start": 0, "channels": { "0": ["11", "-92", "22"] }, "denominator_factors": [] }"#,
    )
    .unwrap();
    let o = run(&["eval", "--spec", path.to_str().unwrap(), "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("value  -5.0000000000000000000e0 ± "), "{text}");

    std::fs::write(&path, r#"{ "x": "1/8", "binomial_power": 1, "start": 0, "channels": {}, "denominator_factors": [] }"#).unwrap();
    assert_eq!(run(&["eval", "--spec", path.to_str().unwrap(), "--digits", "20"]).status.code(), Some(2));
}
