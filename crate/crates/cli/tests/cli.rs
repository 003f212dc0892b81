use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hrep(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("hrep-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(contents.as_bytes())
        .unwrap();
    path
}

#[test]
fn group_info_examples() {
    let d8 = json(&["group-info", "--builtin", "d8"]);
    assert_eq!(d8["nilpotency_class"], 2);
    assert_eq!(d8["center"].as_array().unwrap().len(), 2);
    assert_eq!(d8["abelianization"]["factors"], serde_json::json!([2, 2]));

    let c12 = json(&["group-info", "--builtin", "c12"]);
    assert_eq!(c12["nilpotency_class"], 1);
    assert_eq!(c12["abelianization"]["factors"], serde_json::json!([12]));

    let heis3 = json(&["group-info", "--builtin", "heis3"]);
    assert_eq!(heis3["order"], 27);
    assert_eq!(heis3["nilpotency_class"], 2);
}

#[test]
fn heisenberg_examples() {
    let d8 = json(&["heisenberg", "--builtin", "d8"]);
    let big: Vec<&Value> = d8["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["dim"] == 2)
        .collect();
    assert_eq!(big.len(), 1);
    assert_eq!(big[0]["isotropics"], 3);
    assert_eq!(big[0]["rk2"], 2);

    let ab = json(&["heisenberg", "--builtin", "ab:2,4"]);
    assert!(ab["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["dim"] == 1));
    assert_eq!(ab["pairs"].as_array().unwrap().len(), 8);

    let cp = json(&["heisenberg", "--builtin", "cp:d8,q8"]);
    let big: Vec<&Value> = cp["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["dim"] == 4)
        .collect();
    assert!(!big.is_empty());
    assert!(big.iter().all(|p| p["rk2"] == 4));
}

#[test]
fn verify_and_det() {
    let out = hrep(&["verify", "--builtin", "d8"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);

    for name in ["heis3", "heis5"] {
        let det = json(&["det", "--builtin", name]);
        let pairs = det["pairs"].as_array().unwrap();
        let top: Vec<&Value> = pairs
            .iter()
            .filter(|p| p["dim"].as_u64() > Some(1))
            .collect();
        assert!(!top.is_empty());
        assert!(
            top.iter()
                .all(|p| p["det_trivial"] == true && p["all_agree"] == true),
            "{name}"
        );
    }
}

#[test]
fn p3_table() {
    let report = json(&["p3", "--p", "3"]);
    let rows = report["groups"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["exponent"], 3);
    assert!(rows[0]["det_trivial"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v == true));
    assert_eq!(rows[1]["exponent"], 9);
    assert!(rows[1]["det_trivial"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v == false));
    assert_eq!(
        json(&["p3", "--p", "5"])["groups"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hrep(args).status.code();
    assert_eq!(code(&["p3", "--p", "4"]), Some(2));
    assert_eq!(code(&["p3", "--p", "2"]), Some(2));
    assert_eq!(code(&["group-info", "--builtin", "nonsense"]), Some(2));
    assert_eq!(code(&["group-info"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(
        code(&["heisenberg", "--builtin", "d64", "--max-order", "16"]),
        Some(3)
    );
    assert_eq!(
        code(&["transfer", "--builtin", "d8", "--subgroup", "9"]),
        Some(2)
    );

    let corrupt = temp_file(
        "corrupt.json",
        r#"{"label": "bad", "cayley_table": [[0, 1, 2], [1, 1, 0], [2, 0, 1]]}"#,
    );
    let out = hrep(&["verify", "--input", corrupt.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a group"));
    assert!(out.stdout.is_empty());
}

#[test]
fn file_input() {
    let table = temp_file(
        "c3.json",
        r#"{"label": "C3", "cayley_table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}"#,
    );
    let info = json(&["group-info", "--input", table.to_str().unwrap()]);
    assert_eq!(info["label"], "C3");
    assert_eq!(info["abelianization"]["factors"], serde_json::json!([3]));

    let built = temp_file(
        "q8.json",
        r#"{"construct": {"family": "quaternion8", "params": {}}}"#,
    );
    let info = json(&["group-info", "--input", built.to_str().unwrap()]);
    assert_eq!(info["order"], 8);
    assert_eq!(info["squares"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic_and_sorted() {
    for args in [
        &["verify", "--builtin", "q8", "--seed", "7"][..],
        &["heisenberg", "--builtin", "heis3", "--format", "tsv"],
        &[
            "transfer",
            "--builtin",
            "heis3",
            "--subgroup",
            "1,3",
            "--format",
            "tsv",
        ],
        &["det", "--builtin", "d8"],
    ] {
        let (a, b) = (hrep(args), hrep(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }

    let text = String::from_utf8(hrep(&["group-info", "--builtin", "d8"]).stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let tsv =
        String::from_utf8(hrep(&["group-info", "--builtin", "q16", "--format", "tsv"]).stdout)
            .unwrap();
    let ids: Vec<usize> = tsv
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ids, (0..16).collect::<Vec<_>>());
}

#[test]
fn small_suite() {
    let report = json(&["suite", "--max-order", "12", "--format", "json"]);
    assert_eq!(report["pass"], true);
    assert!(report["groups"].as_array().unwrap().len() > 10);
}
