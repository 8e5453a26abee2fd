use std::path::PathBuf;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_edgecascade"));
    c.env_remove("EDGECASCADE_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("edgecascade-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn solve_reports_nullspace_dimension() {
    let o = run(&["solve", "gue", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nullspace dimension: 1"));
    let o = run(&["solve", "gue-soft", "2"]);
    let s = stdout(&o);
    assert!(s.contains("nullspace dimension: 0"));
    assert!(s.contains("matches printed entry: yes"));
}

#[test]
fn solve_json_and_csv() {
    let o = run(&["--format", "json", "solve", "lue-soft-right", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nullspace_dimension"], 0);
    assert_eq!(v["matches_corrected"], true);
    let o = run(&["--format", "csv", "solve", "gue", "1"]);
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("basis,coefficient"));
    assert_eq!(s.lines().count(), 4);
}

#[test]
fn solve_rejects_bad_bounds() {
    assert_eq!(run(&["solve", "gue", "1", "--bounds", "1,2"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "gue", "9"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "xyz-soft", "1"]).status.code(), Some(64));
}

#[test]
fn saddle_prints_b() {
    let o = run(&["saddle", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b = -35/16384"));
    assert_eq!(run(&["saddle", "40"]).status.code(), Some(64));
}

#[test]
fn hyper_table_and_check() {
    let o = run(&["hyper", "0", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1/384 D^8 + 1/24 D^7 + 13/72 D^6 + 1/5 D^5"));
    assert!(s.contains("1/N (1/2 D^2)"));
}

#[test]
fn laplace_recursion() {
    let o = run(&["laplace", "gue", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 free parameter"));
    let o = run(&["laplace", "gse", "2", "--nu", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("satisfies the recursion: PASS"));
    assert_eq!(run(&["laplace", "goe", "1", "--nu", "1/2"]).status.code(), Some(64));
}

#[test]
fn converge_usage_errors() {
    assert_eq!(run(&["converge", "gue-soft", "1", "", "-2:2:0.5"]).status.code(), Some(64));
    assert_eq!(run(&["converge", "gue-soft", "1", "50", "-2:2:0.5"]).status.code(), Some(64));
    assert_eq!(run(&["converge", "gue-soft", "1", "50,100", "2:-2:0.5"]).status.code(), Some(64));
    assert_eq!(run(&["converge", "goe-soft", "0", "50,100", "0"]).status.code(), Some(64));
    assert_eq!(run(&["--precision", "8", "converge", "gue", "0", "10,20", "0"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn converge_hard_edge_orders() {
    let o = run(&["--format", "json", "converge", "lue-hard", "0", "20,40,80", "1:8:1", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for f in v["aggregate"].as_array().unwrap() {
        assert!((f["order"].as_f64().unwrap() - 2.0).abs() < 0.2);
    }
    assert_eq!(v["rows"].as_array().unwrap().len(), 24);
}

#[test]
fn converge_csv_uses_target_digits() {
    let o = run(&["--format", "csv", "--precision", "30", "converge", "lue-hard", "0", "10,20", "2"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,size,y,density,approximation,residual"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    // 30 working digits leave 22 target digits
    let mantissa: String = row[3].split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(mantissa.len(), 22);
}

#[test]
fn precision_from_environment() {
    let o = bin().env("EDGECASCADE_PRECISION", "12").args(["converge", "gue", "0", "10,20", "0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(64));
    let o = bin().env("EDGECASCADE_PRECISION", "50").args(["--format", "json", "converge", "gue", "0", "10,20", "0"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["working_digits"], 50);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "identities"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("FAIL")).count(), 2);
    assert!(s.contains("known erratum"));
    assert_eq!(run(&["verify", "identities", "--corrected"]).status.code(), Some(0));
    for scope in ["relations", "catalog", "finite", "decomposition"] {
        assert_eq!(run(&["verify", scope]).status.code(), Some(0), "{scope}");
    }
}

#[test]
fn corrupted_operator_file_fails_with_diff() {
    let dir = scratch("ops");
    let dump = edgecascade::catalog::dump_json(&edgecascade::catalog::EdgeCase::gue_soft()).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, dump.to_string()).unwrap();
    let o = run(&["verify", "catalog", "--operators", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let mut bad_dump = dump.clone();
    let ops = edgecascade::catalog::get_operators(&edgecascade::catalog::EdgeCase::gue_soft()).unwrap();
    let mut broken = ops.clone();
    broken[0] = broken[0].add(&edgecascade::catalog::literal(&[("y", 0)]));
    bad_dump["operators"] = serde_json::to_value(&broken).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, bad_dump.to_string()).unwrap();
    let o = run(&["verify", "catalog", "--operators", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL") && s.contains("d^0: catalog"), "{s}");
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["--format", "json", "saddle", "6"]).stdout;
    let b = run(&["--format", "json", "saddle", "6"]).stdout;
    assert_eq!(a, b);
    let a = run(&["--format", "json", "verify", "relations"]).stdout;
    let b = run(&["--format", "json", "verify", "relations"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn out_dir_writes_result_and_manifest() {
    let dir = scratch("out");
    let o = run(&["--out", dir.to_str().unwrap(), "--format", "json", "solve", "gue", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read(dir.join("solve.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("solve.manifest.json")).unwrap()).unwrap();
    let digest: String = Sha256::digest(&body).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(manifest["output_hashes"]["solve.json"], digest);
    assert_eq!(manifest["command"], "solve");
    assert_eq!(manifest["case"], "gue-soft");
    assert_eq!(manifest["parameters"]["j"], "2");
    assert_eq!(manifest["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["input_hashes"]["table"].as_str().unwrap().len() == 64);
}

#[test]
fn library_entry_point_matches_binary() {
    assert_eq!(edgecascade::cli::run(["edgecascade", "saddle", "3"]), 0);
    assert_eq!(edgecascade::cli::run(["edgecascade", "converge", "gue", "1", ",", "0"]), 64);
    assert_eq!(edgecascade::cli::parse_y_grid("\u{2212}2:2:0.5").unwrap().len(), 9);
    assert_eq!(edgecascade::cli::parse_n_list("50, 100,200").unwrap(), vec![50, 100, 200]);
}
