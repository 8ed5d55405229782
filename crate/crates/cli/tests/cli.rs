use std::path::PathBuf;
use std::process::{Command, Output};

use dzeta_core::golden::{C2_K12, DC3_K10};
use dzeta_core::matrices::Level;
use dzeta_core::MatrixBundle;
use serde_json::Value;

fn dzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dzeta"))
        .args(args)
        .env_remove("DZETA_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dzeta-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn build_prints_the_weight_12_matrix() {
    let o = dzeta(&["build", "--level", "2", "--weight", "12"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (i, row) in C2_K12.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(v["c"][i][j], *e);
        }
    }
    let back: MatrixBundle = serde_json::from_value(v).unwrap();
    assert_eq!(back, MatrixBundle::build(Level::Two, 12).unwrap());
}

#[test]
fn build_single_part() {
    let o = dzeta(&["build", "--level", "3", "--weight", "10", "--part", "dc"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["part"], "dc");
    for (i, row) in DC3_K10.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(v["matrix"][i][j], *e);
        }
    }
}

#[test]
fn build_empty_weight_warns() {
    let o = dzeta(&["build", "--level", "2", "--weight", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["c"], serde_json::json!([]));
}

#[test]
fn build_csv_is_long_format() {
    let o = dzeta(&["build", "--level", "1", "--weights", "6..8", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("level,weight,part,row,col,value"));
    assert_eq!(lines.count(), 1 + 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["build", "--level", "2", "--weight", "11"][..],
        &["build", "--level", "4", "--weight", "12"],
        &["build", "--level", "1", "--weight", "12", "--part", "d"],
        &["build", "--level", "2"],
        &["spectral", "--levels", "1"],
        &["verify-paper", "--only", "nonsense"],
        &["oracle-check", "--level", "2", "--weights", "6..10", "--trace", "3,3:3,3"],
        &["oracle-check", "--level", "2", "--weight", "12", "--trace", "3,3:3,3"],
        &["spectral", "--format", "table"],
    ] {
        let o = dzeta(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn verify_paper_passes() {
    let o = dzeta(&["verify-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("14 of 14 checks passed"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_paper_reports_injected_fault() {
    let o = dzeta(&["verify-paper", "--inject-fault", "depth1-sign"]);
    assert_eq!(code(&o), 1);
    let first_fail = stdout(&o).lines().find(|l| l.starts_with("FAIL")).unwrap().to_string();
    assert!(first_fail.contains("first mismatch at C^2_{12,2}(1,1)"), "{first_fail}");
    assert!(stderr(&o).contains("C^2_{12,2}(1,1)"));
}

#[test]
fn verify_paper_subset() {
    let o = dzeta(&["verify-paper", "--only", "k10-level3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["eigen-k10-level3-minus", "eigen-k10-level3-plus"]);
}

#[test]
fn spectral_sweep_to_40() {
    let o = dzeta(&["spectral", "--levels", "2,3", "--max-weight", "40", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let mut n = 0;
    for r in rows.records() {
        let r = r.unwrap();
        for flag in ["invariance_ok", "integral_ok", "deligne_ok"] {
            assert_eq!(&r[col(flag)], "true");
        }
        n += 1;
    }
    assert_eq!(n, 2 * 18);
}

#[test]
fn empty_sweep() {
    let o = dzeta(&["spectral", "--max-weight", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn sweeps_are_deterministic_across_job_counts() {
    let a = dzeta(&["spectral", "--weights", "6..24", "--jobs", "1"]);
    let b = dzeta(&["spectral", "--weights", "6..24", "--jobs", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let order: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["weight"].as_u64().unwrap(), r["level"].as_u64().unwrap()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn conjectures_agree_from_weight_8() {
    let o = dzeta(&["conjectures", "--weights", "8..30", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(!stdout(&o).contains("false"));
}

#[test]
fn conjectures_report_weight_6_finding() {
    let o = dzeta(&["conjectures", "--weights", "6..6", "--levels", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("(N=2, -, k=6): eigenspace 1, series 0, W-space 1"), "{}", stderr(&o));
}

#[test]
fn oracle_check_and_trace() {
    let o = dzeta(&["oracle-check", "--level", "3", "--weights", "6..16"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["mismatches"] == serde_json::json!([])));

    let t = dzeta(&["oracle-check", "--level", "2", "--weight", "12", "--trace", "9,3:3,9"]);
    assert_eq!(code(&t), 0);
    let v: Value = serde_json::from_str(&stdout(&t)).unwrap();
    assert_eq!(v["value"], "6885/256");
}

#[test]
fn wspace_query() {
    let o = dzeta(&["wspace", "--level", "2", "--weight", "10", "--sign", "-"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["dim"], 1);
    assert_eq!(v[0]["basis"][0]["entries"], serde_json::json!(["1", "-7/2", "4"]));
    assert_eq!(v[0]["polynomials"][0], serde_json::json!({"2,6": "1", "4,4": "-7/2", "6,2": "4"}));
}

#[test]
fn output_directory_from_environment() {
    let dir = scratch_dir("env");
    let o = Command::new(env!("CARGO_BIN_EXE_dzeta"))
        .args(["spectral", "--weights", "12..12", "--levels", "2"])
        .env("DZETA_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert!(dir.join("spectral_k12.json").exists());
    assert!(dir.join("spectral_k12_summary.csv").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn output_file_flag() {
    let dir = scratch_dir("file");
    let path = dir.join("bundle.json");
    let o = dzeta(&["build", "--level", "3", "--weight", "12", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let back: MatrixBundle = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, MatrixBundle::build(Level::Three, 12).unwrap());
    let _ = std::fs::remove_dir_all(&dir);
}
