use std::fs;
use std::process::Command;

use gsp4kit_cli::{run_suite, SuiteConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gsp4kit"))
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = bin().args(["verify", "--suite", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-suite"));
}

#[test]
fn unknown_suite_in_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"suites": ["closedness", "bogus"]}"#).unwrap();
    let out = bin().args(["verify", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_is_an_io_error() {
    let out = bin().args(["verify", "--config", "/nonexistent/x.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn empty_suite_list_passes() {
    let r = run_suite(&SuiteConfig::default());
    assert!(r.passed);
    assert!(r.checks.is_empty());
    assert_eq!(r.schema, "1");
}

#[test]
fn failing_suite_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = bin().args(["verify", "--suite", "frame-change", "--out"]).arg(&out_path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let bad: Vec<_> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["id"], "frame-change/e(-a+b)");
    assert!(bad[0]["witness"]["lhs"].is_string());
}

#[test]
fn passing_suites_exit_zero() {
    let out = bin().args(["verify", "--suite", "lie-structure", "--suite", "wedge-decomp", "--out", "-"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["suites"], serde_json::json!(["lie-structure", "wedge-decomp"]));
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig::with_suites(&["uea-identities", "closedness", "wedge-decomp"]);
    let a = run_suite(&cfg).to_json_untimed();
    let b = run_suite(&cfg).to_json_untimed();
    assert_eq!(a, b);
    // suite order in the config does not matter
    let c = run_suite(&SuiteConfig::with_suites(&["wedge-decomp", "closedness", "uea-identities"])).to_json_untimed();
    assert_eq!(a, c);
}

#[test]
fn every_check_has_an_anchor() {
    let r = run_suite(&SuiteConfig::with_suites(&["lie-structure", "section6-forms", "period-reduction"]));
    assert!(r.checks.iter().all(|c| !c.anchor.is_empty() && c.id.starts_with(&c.suite)));
    assert_eq!(r.timing.len(), r.checks.len());
}

#[test]
fn toml_config_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "suites = [\"period-reduction\"]\nmax_degree = 3\npbw_samples = 10\n").unwrap();
    let loaded = SuiteConfig::load(&cfg).unwrap();
    assert_eq!(loaded.max_degree, 3);
    assert_eq!(loaded.pbw_samples, 10);
    let out_path = dir.path().join("r.json");
    let out = bin().args(["verify", "--config"]).arg(&cfg).args(["--max-degree", "4", "--out"]).arg(&out_path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let ind = r["checks"].as_array().unwrap().iter().find(|c| c["id"] == "period-reduction/strategy-independence").unwrap();
    assert!(ind["anchor"].as_str().unwrap().contains("<= 4"));
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"suites": [], "max_dgree": 3}"#).unwrap();
    assert!(SuiteConfig::load(&cfg).is_err());
}

#[test]
fn dump_round_trip_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["dump", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s1 = fs::read(dir.path().join("structure.json")).unwrap();
    let u1 = fs::read(dir.path().join("uea.json")).unwrap();

    let dir2 = tempfile::tempdir().unwrap();
    gsp4kit_cli::dump::dump_structure(dir2.path()).unwrap();
    assert_eq!(s1, fs::read(dir2.path().join("structure.json")).unwrap());
    assert_eq!(u1, fs::read(dir2.path().join("uea.json")).unwrap());

    let reloaded: gsp4kit::gsp4::StructureDump = serde_json::from_slice(&s1).unwrap();
    assert_eq!(reloaded, gsp4kit::gsp4::structure_dump());

    // [H, e(a+b)] = -2i e(a+b) is in the dump
    let entry = reloaded.root_vectors.iter().find(|r| r.root == "alpha+beta").unwrap();
    let uea: serde_json::Value = serde_json::from_slice(&u1).unwrap();
    assert_eq!(entry.ad_h, gsp4kit::Scalar::gauss(0, -2));
    assert_eq!(uea["casimir_shape"]["ok"], true);
    assert_eq!(uea["c"][1], "lambda - 1");
}

#[test]
fn dump_to_unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    fs::write(&file, "x").unwrap();
    let out = bin().args(["dump", "--out"]).arg(file.join("sub")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
