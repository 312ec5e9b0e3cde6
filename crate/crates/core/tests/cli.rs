//! The `rmlab` binary: outputs and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn rmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmlab")).args(args).env_remove("RMLAB_MODULI").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rmlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_exits_zero() {
    assert_eq!(rmlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rmlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rmlab(&["accept", "nope"]).status.code(), Some(2));
    assert_eq!(rmlab(&["--budget", "0", "field", "info", "--q", "2", "--n", "3"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(rmlab(&["code", "verify", path(&bad)]).status.code(), Some(2));
}

#[test]
fn gabidulin_code_verifies() {
    let g = scratch("g.json");
    let o = rmlab(&[
        "code",
        "new",
        "--family",
        "gabidulin",
        "--q",
        "2",
        "--n",
        "5",
        "--k",
        "2",
        "--s",
        "1",
        "-o",
        path(&g),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = rmlab(&["code", "verify", path(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(5,5,2;4) MRD=true"), "{}", stdout(&o));
    assert!(stdout(&o).contains("budget used"));
    let o = rmlab(&["--budget", "10", "code", "verify", path(&g)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_mrd_code_is_refuted() {
    let c = scratch("gcd2.json");
    rmlab(&["code", "new", "--family", "gabidulin", "--q", "2", "--n", "4", "--k", "2", "--s", "2", "-o", path(&c)]);
    let o = rmlab(&["code", "verify", path(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MRD=false"));
}

#[test]
fn non_scattered_subspace_is_refuted() {
    let u = scratch("u.json");
    assert_eq!(
        rmlab(&["subspace", "new", "--graph", "x^q^2", "--q", "2", "--n", "4", "-o", path(&u)]).status.code(),
        Some(0)
    );
    let o = rmlab(&["subspace", "check", path(&u)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("scattered=false"));
}

#[test]
fn json_output_for_weights_and_idealisers() {
    let g = scratch("g3.json");
    rmlab(&["code", "new", "--family", "gabidulin", "--q", "2", "--n", "3", "-o", path(&g)]);
    let o = rmlab(&["--format", "json", "code", "weights", path(&g)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["1", "0", "49", "14"]));
    let o = rmlab(&["--format", "json", "code", "idealisers", path(&g)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["left_order_log_q"], 3);
    assert_eq!(v["right_is_field"], true);
}

#[test]
fn bridge_round_trip_on_lavrauw_subspace() {
    let u = scratch("lav.json");
    let c = scratch("lav-code.json");
    let back = scratch("lav-back.json");
    rmlab(&["subspace", "new", "--family", "lavrauw", "--r", "4", "--q", "2", "--n", "3", "-o", path(&u)]);
    assert_eq!(rmlab(&["bridge", "to-code", path(&u), "-o", path(&c)]).status.code(), Some(0));
    assert!(stdout(&rmlab(&["code", "verify", path(&c)])).starts_with("(6,3,2;2) MRD=true"));
    assert_eq!(rmlab(&["bridge", "from-code", path(&c), "-o", path(&back)]).status.code(), Some(0));
    assert_eq!(rmlab(&["subspace", "check", path(&back)]).status.code(), Some(0));
    let o = rmlab(&["bridge", "roundtrip", path(&u)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["round_trip_equal"], true);
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_sheekey_reports_agreement() {
    let o = rmlab(&["--format", "json", "bridge", "verify-sheekey", "--f", "x^q", "--q", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["scattered"].clone(), v["mrd"].clone()), (true.into(), true.into()));
}

#[test]
fn search_max_and_worker_count_agree() {
    let one =
        rmlab(&["--workers", "1", "--format", "json", "subspace", "search-max", "--r", "3", "--n", "2", "--q", "2"]);
    let two =
        rmlab(&["--workers", "2", "--format", "json", "subspace", "search-max", "--r", "3", "--n", "2", "--q", "2"]);
    assert_eq!(one.stdout, two.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["k"], 3);
}

#[test]
fn modulus_overrides_come_from_the_environment() {
    let table = scratch("moduli.json");
    // x^3 + x^2 + 1 instead of the default x^3 + x + 1
    std::fs::write(&table, r#"[{"p":2,"modulus":[1,0,1,1]}]"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rmlab"))
        .args(["--format", "json", "field", "info", "--q", "2", "--n", "3"])
        .env("RMLAB_MODULI", &table)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1, 1]));
}

#[test]
fn quick_acceptance_suite_passes() {
    let o = rmlab(&["accept", "quick"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(o.status.code(), Some(0), "{err}");
    assert_eq!(err.lines().filter(|l| l.starts_with("[PASS]")).count(), 12);
}
