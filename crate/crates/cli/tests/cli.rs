use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn syz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syz"))
        .args(args)
        .env_remove("SYZ_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_accepts_the_first_example() {
    let out = syz(&["--json", "check", &fixture("ex51")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["grade"], "grade-two");
    assert_eq!(v["generators"], 4);
    assert_eq!(v["ideals_equal"], true);
}

#[test]
fn basis_via_tilde_m_on_the_second_example() {
    let out = syz(&["--json", "basis", &fixture("ex52"), "--strategy", "tilde-m", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["strategy"], "tilde-m");
    let rows = v["basis"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 3));
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["conversion"]["e"], "1");
    assert_eq!(v["conversion"]["f"], "1");
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["--json", "basis", &fixture("ex52"), "--strategy", "m", "--seed", "3"];
    let a = syz(&args);
    let b = syz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_syz"))
        .args(["--json", "basis", &fixture("ex51"), "--strategy", "n"])
        .env("SYZ_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["seed"], 5);
    let out = syz(&["--json", "basis", &fixture("ex51"), "--strategy", "n"]);
    assert_eq!(json(&out)["seed"], 0);
}

#[test]
fn verify_reports_printed_bases() {
    let ok = syz(&["verify", &fixture("ex51"), "--basis", &fixture("ex51_n_hat")]);
    assert_eq!(ok.status.code(), Some(0));
    let ok = syz(&["verify", &fixture("ex52"), "--basis", &fixture("ex52_uhat")]);
    assert_eq!(ok.status.code(), Some(0));
    // The printed first column of this matrix is not a syzygy.
    let bad = syz(&["--json", "verify", &fixture("ex51"), "--basis", &fixture("ex51_uhat_star")]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["verification"]["syzygy_ok"], serde_json::json!([false, true, true]));
}

#[test]
fn bounds_table_and_overrides() {
    let out = syz(&["--json", "bounds", &fixture("ex51")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["budget"]["delta_a"], 3);
    let value = |v: &Value, id: &str| {
        v["bounds"].as_array().unwrap().iter().find(|e| e["formula"] == id).unwrap()["value"].clone()
    };
    // 192 * (4 + 3 + 1)^4
    assert_eq!(value(&v, "MTT_1"), "786432");
    let out = syz(&["--json", "bounds", &fixture("ex51"), "--delta-a", "2"]);
    let v = json(&out);
    assert_eq!(value(&v, "MTT_1"), "460992");
    assert_eq!(value(&v, "CITAM"), "120000");
}

#[test]
fn demos_pass() {
    for name in ["ex51", "ex52"] {
        let out = syz(&["--json", "demo", name, "--strategy", "tilde-m"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["status"], "ok");
    }
}

#[test]
fn input_errors_exit_with_two() {
    let out = syz(&["check", "/nonexistent/instance"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = temp_file("bad_instance", "vars: s t\na1: s + u\n");
    let out = syz(&["--json", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert!(v["error"].as_str().unwrap().contains("line 2"));
    let short = temp_file("one_generator", "vars: x y\na1: x\np: x\nq: y\n");
    let out = syz(&["basis", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least two generators"));
}

#[test]
fn common_factor_needs_strip_gcd() {
    let text = "vars: x y\na1: x^2*y\na2: x*y^2\np: x^2*y\nq: x*y^2\n";
    let path = temp_file("common_factor", text);
    let path = path.to_str().unwrap();
    let out = syz(&["basis", path]);
    assert_eq!(out.status.code(), Some(2));
    let out = syz(&["--json", "basis", path, "--strip-gcd"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert!(v["warnings"][0].as_str().unwrap().contains("common factor"));
}

#[test]
fn unknown_strategy_is_a_usage_error() {
    let out = syz(&["basis", &fixture("ex51"), "--strategy", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}
