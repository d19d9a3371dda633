// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn ckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckit"))
        .args(args)
        .env_remove("CKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tunnell_scan_small_range() {
    let o = ckit(&["tunnell-scan", "--max", "10", "--classes", "1,2,3"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        ["n", "class_mod8", "tunnell_L", "ratio", "certified_noncongruent", "predicted_congruent"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    let ns: Vec<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert_eq!(ns, ["1", "2", "3", "10"]);
    assert_eq!(&rows[0][2], "2");
    assert_eq!(&rows[0][4], "true");
}

#[test]
fn vanishing_classes_summarize_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = ckit(&["tunnell-scan", "--max", "2000", "--classes", "5,6,7", "--out", path_str(&out)]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("all.fraction\t0\n"), "{s}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for (p, threads) in [(&a, "1"), (&b, "2")] {
            let o = ckit(&["--threads", threads, "flpt", "--max", "200", "--analytic-max", "60", "--format", format, "--out", path_str(p)]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn json_rows_follow_schema() {
    let o = ckit(&["tunnell-scan", "--max", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v[0];
    assert_eq!(row["n"], 1);
    assert_eq!(row["class_mod8"], 1);
    assert_eq!(row["tunnell_L"], 2);
    assert_eq!(row["ratio"], "1/4");
    assert_eq!(row["certified_noncongruent"], true);
    assert_eq!(row["predicted_congruent"], false);
}

#[test]
fn baseline_is_written_then_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    let run = |max: &str| ckit(&["tunnell-scan", "--max", max, "--classes", "1,2,3", "--out", path_str(&dir.path().join("x.csv")), "--baseline", path_str(&base)]);
    assert!(run("500").status.success());
    assert!(base.exists());
    assert!(run("500").status.success());
    let o = run("600");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("baseline mismatch"));
}

#[test]
fn exit_codes() {
    assert_eq!(ckit(&["tunnell-scan"]).status.code(), Some(2));
    assert_eq!(ckit(&["selmer", "--family", "tiling", "--n", "13", "--sign", "2"]).status.code(), Some(2));
    assert_eq!(ckit(&["selmer", "--family", "congruent", "--n", "5", "--fastpath"]).status.code(), Some(2));
    assert_eq!(ckit(&["classgroup", "--n", "12"]).status.code(), Some(2));
    assert_eq!(ckit(&["constants", "--p", "4"]).status.code(), Some(2));
    // f64 cannot certify 18 digits
    assert_eq!(ckit(&["lvalue", "--family", "congruent", "--n", "17", "--digits", "18"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_ckit"))
        .args(["classgroup", "--n", "39"])
        .env("CKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["propAB", "constants", "period", "monsky"] {
        let o = ckit(&["verify", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = ckit(&["verify", "propAB"]);
    assert!(stdout(&o).contains("sign at 1 and 57"));
    assert_eq!(ckit(&["verify", "nonsuch"]).status.code(), Some(2));
}

#[test]
fn lvalue_reports_tunnell_normalization() {
    let o = ckit(&["lvalue", "--family", "congruent", "--n", "17"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["normalized"], 4.0);
    assert_eq!(v["analytic_sha"]["rounded"], "4");
    let o = ckit(&["lvalue", "--family", "congruent", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["epsilon"], -1);
    assert!(v.get("analytic_sha").is_none());
}

#[test]
fn selmer_paths_agree() {
    let slow = ckit(&["selmer", "--family", "tiling", "--n", "13", "--sign", "-1"]);
    let fast = ckit(&["selmer", "--family", "tiling", "--n", "13", "--sign", "-1", "--fastpath"]);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_slice(&slow.stdout).unwrap(), serde_json::from_slice(&fast.stdout).unwrap());
    assert_eq!(a["members"], b["members"]);
    assert_eq!(a["s_set"], serde_json::json!(["2", "3", "13", "inf"]));
    assert!(a["quotient_dim"].as_u64().unwrap() >= 2);
}

#[test]
fn classgroup_of_39() {
    let o = ckit(&["classgroup", "--n", "39"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["d"].as_i64(), v["h"].as_u64(), v["g"].as_u64()), (Some(-39), Some(4), Some(2)));
    assert_eq!(v["four_rank"], 1);
    assert_eq!(v["two_sylow"], serde_json::json!([2]));
}

#[test]
fn constants_table() {
    let o = ckit(&["constants", "--p", "2", "--dmax", "40"]);
    let s = stdout(&o);
    let mut r = csv::Reader::from_reader(s.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 41);
    assert_eq!(&rows[0][1], "0.209711220898");
    assert_eq!(&rows[0][3], "0");
}

#[test]
fn selmer_distribution_respects_parity() {
    let o = ckit(&["selmer-dist", "--family", "congruent", "--max", "150"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("parity_violations\t0"));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    for row in r.records().map(|x| x.unwrap()) {
        let class: i32 = row[0].parse().unwrap();
        let d: u32 = row[1].parse().unwrap();
        if d.is_multiple_of(2) != (class == 1) {
            assert_eq!(&row[2], "0");
            assert_eq!(&row[4], "0");
        }
    }
}
