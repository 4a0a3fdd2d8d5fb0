use std::fs;
use std::process::{Command, Output};

use permlab_core::verify::VerificationReport;
use permlab_core::RefinedCountTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .env_remove("PERMLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn count_table_and_csv() {
    let table = stdout(&["count", "--basis", "2143,3142,254613", "--max-n", "7"]);
    let last: Vec<&str> = table.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last, ["7", "1806"]);
    let csv = stdout(&[
        "count",
        "--basis",
        "2143,3142",
        "--max-n",
        "7",
        "--format",
        "csv",
    ]);
    assert_eq!(csv.lines().next(), Some("n,count"));
    assert_eq!(
        csv.lines().rev().take(2).collect::<Vec<_>>(),
        ["7,1823", "6,395"]
    );
}

#[test]
fn count_json() {
    let text = stdout(&[
        "count", "--basis", "132", "--max-n", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["basis"], "132");
    assert_eq!(v["counts"], serde_json::json!([1, 1, 2, 5, 14, 42]));
}

#[test]
fn basis_forms() {
    let digits = stdout(&[
        "count",
        "--basis",
        "2143,3142",
        "--max-n",
        "6",
        "--format",
        "csv",
    ]);
    let listed = stdout(&[
        "count",
        "--basis",
        "2,1,4,3;3142",
        "--max-n",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(digits, listed);
    assert_eq!(
        code(&["count", "--basis", "21,43", "--max-n", "3"]),
        Some(2)
    );
    assert_eq!(code(&["count", "--basis", "", "--max-n", "3"]), Some(2));
    assert_eq!(code(&["count", "--basis", "2143;31x2"]), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&[]), Some(2));
    assert_eq!(code(&["count"]), Some(2));
    assert_eq!(code(&["count", "--basis", "12", "--max-n", "-1"]), Some(2));
    assert_eq!(
        code(&["count", "--basis", "12", "--parallelism", "0"]),
        Some(2)
    );
    assert_eq!(
        code(&["stat", "--basis", "132", "--stats", "height"]),
        Some(2)
    );
    assert_eq!(
        code(&["stat", "--basis", "132", "--filter", "odd"]),
        Some(2)
    );
    assert_eq!(code(&["series", "--name", "nope"]), Some(2));
    assert_eq!(code(&["verify", "--id", "no-such"]), Some(2));
    assert_eq!(
        code(&["verify", "--id", "A1-eq2", "--order", "40"]),
        Some(2)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn capacity_exits_1() {
    let out = run(&[
        "count",
        "--basis",
        "2143,3142",
        "--max-n",
        "7",
        "--capacity",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn enumerate_is_deterministic_across_parallelism() {
    let base = ["enumerate", "--basis", "2143,3142,546132", "--n", "7"];
    let one = stdout(&[&base[..], &["--parallelism", "1"]].concat());
    let four = stdout(&[&base[..], &["--parallelism", "4"]].concat());
    assert_eq!(one, four);
    assert_eq!(one.lines().count(), 1806);
    let mut sorted: Vec<&str> = one.lines().collect();
    sorted.sort_unstable();
    assert_eq!(sorted, one.lines().collect::<Vec<_>>());
}

#[test]
fn enumerate_and_simples() {
    assert_eq!(stdout(&["enumerate", "--basis", "12", "--n", "3"]), "321\n");
    assert_eq!(
        stdout(&["simples", "--basis", "2143,3142,4132", "--n", "4"]),
        "2413\n"
    );
    assert_eq!(stdout(&["simples", "--basis", "2143,3142", "--n", "3"]), "");
    let json = stdout(&[
        "enumerate",
        "--basis",
        "132",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(
        v["perms"],
        serde_json::json!(["123", "213", "231", "312", "321"])
    );
}

#[test]
fn count_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = stdout(&[
        "count",
        "--basis",
        "2143,3142,4132",
        "--max-n",
        "6",
        "--cache-dir",
        path,
    ]);
    let cached = fs::read_to_string(dir.path().join("counts.csv")).unwrap();
    assert_eq!(cached.lines().count(), 7);
    assert!(cached.lines().all(|l| l.split(',').count() == 3));
    let second = Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(["count", "--basis", "2143,3142,4132", "--max-n", "6"])
        .env("PERMLAB_CACHE_DIR", path)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(second.stdout).unwrap(), first);
    assert_eq!(
        fs::read_to_string(dir.path().join("counts.csv")).unwrap(),
        cached
    );
}

#[test]
fn stat_json_round_trips() {
    let json = stdout(&[
        "stat",
        "--basis",
        "132",
        "--max-n",
        "5",
        "--stats",
        "bond,lr-min",
        "--filter",
        "last-is-max",
        "--format",
        "json",
    ]);
    let table = RefinedCountTable::from_json(&json).unwrap();
    assert_eq!(table.get(2, &[1, 1]), 1);
    assert_eq!(table.total(5), 14);
    let csv = stdout(&[
        "stat",
        "--basis",
        "2143,3142,4132",
        "--max-n",
        "3",
        "--stats",
        "leading-maxima",
        "--format",
        "csv",
    ]);
    assert!(csv.lines().any(|l| l == "3,3,1"));
}

#[test]
fn series_output() {
    assert_eq!(
        stdout(&["series", "--name", "large-schroder", "--order", "7"]),
        "1 1 2 6 22 90 394 1806\n"
    );
    assert_eq!(
        stdout(&["series", "--name", "catalan", "--order", "5"]),
        "1 1 2 5 14 42\n"
    );
    let y = stdout(&["series", "--name", "Y", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&y).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["x", "t"]));
    let table = stdout(&["series", "--name", "Y", "--order", "2"]);
    assert_eq!(table.lines().next(), Some("1 * x^0 t^0"));
    let csv = stdout(&[
        "series", "--name", "s-closed", "--order", "4", "--format", "csv",
    ]);
    assert_eq!(csv, "x,t,u,coeff\n2,0,2,1\n");
}

#[test]
fn verify_single_ids() {
    let out = stdout(&["verify", "--id", "cubic-B", "--order", "20"]);
    assert!(out.starts_with("PASS"));
    let json = stdout(&[
        "verify",
        "--id",
        "staircase",
        "--max-n",
        "6",
        "--format",
        "json",
    ]);
    let report: VerificationReport = serde_json::from_str(&json).unwrap();
    assert!(report.passed());
    assert_eq!(report.max_n, 6);
    let csv = stdout(&[
        "verify",
        "--id",
        "bijection_A_B",
        "--max-n",
        "5",
        "--format",
        "csv",
    ]);
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("bijection-A-B,5,pass,0,"));
}

#[test]
fn verify_all_small() {
    let json = stdout(&[
        "verify", "--all", "--max-n", "5", "--order", "6", "--format", "json",
    ]);
    let reports: Vec<VerificationReport> = serde_json::from_str(&json).unwrap();
    assert!(reports.len() > 20);
    assert!(reports.iter().all(VerificationReport::passed));
}
