use std::path::PathBuf;

use harmdesign::cli::{parse_width, run};
use serde_json::Value;

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("harmdesign").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn bound_json_golden() {
    let out = ok(&["bound", "-n", "24", "-t", "6", "--format", "json"]);
    assert_eq!(out, golden("bound_24_6.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["b"], serde_json::json!({"num": 231, "den": 1}));
    assert_eq!(v["c"], serde_json::json!({"num": 1989, "den": 1}));
    assert_eq!(v["alpha_sq"], serde_json::json!({"num": 1, "den": 4}));
    assert_eq!(v["verified"], Value::Bool(true));

    let out = ok(&["bound", "-n", "8", "--T", "8,4", "--format", "json"]);
    assert_eq!(out, golden("bound_8_8_4.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["b"], serde_json::json!({"num": 65, "den": 1}));
}

#[test]
fn scan_csv_golden() {
    let out = ok(&["scan", "--T", "12,8,4", "--n-max", "33", "--format", "csv"]);
    assert_eq!(out, golden("scan_12_8_4.csv"));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        ["5,35", "6,64", "9,285", "13,1311", "16,3315", "20,9425", "23,18560"]
    );
}

#[test]
fn screen_json_golden_and_parallel_identical() {
    let args = [
        "screen", "--T", "12,8,4", "--n-min", "2", "--n-max", "24", "--format", "json",
    ];
    let serial = ok(&args);
    assert_eq!(serial, golden("screen_12_8_4.json"));
    for k in ["1", "3", "8"] {
        let mut a = args.to_vec();
        a.extend(["--parallel", k]);
        assert_eq!(ok(&a), serial, "--parallel {k}");
    }
    let v: Value = serde_json::from_str(&serial).unwrap();
    let inconclusive: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == "inconclusive")
        .map(|r| r["n"].as_i64().unwrap())
        .collect();
    assert_eq!(inconclusive, vec![9, 13, 16]);
}

#[test]
fn scan_parallel_identical() {
    let args = [
        "scan", "--T", "8,4", "--n-min", "2", "--n-max", "400", "--format", "json",
    ];
    let serial = ok(&args);
    let mut a = args.to_vec();
    a.extend(["--parallel", "4"]);
    assert_eq!(ok(&a), serial);
}

#[test]
fn dioph_golden() {
    let out = ok(&["dioph", "--case", "table-7-5", "--format", "json"]);
    assert_eq!(out, golden("dioph_table_7_5.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["note"].as_str().unwrap().contains("n >= 170: {308,488}"));
    let csv = ok(&["dioph", "--case", "curve-168b2", "--format", "csv"]);
    assert_eq!(
        csv,
        "case-id,x,y\ncurve-168b2/points,-4,0\ncurve-168b2/points,0,0\ncurve-168b2/points,3,0\n"
    );
    let csv = ok(&["dioph", "--case", "curve-231", "--format", "csv"]);
    assert_eq!(csv, "case-id,x,y\n");
    let csv = ok(&["dioph", "--case", "parity-400", "--format", "csv"]);
    assert!(csv.contains("parity-400/pair,200,2\n") && csv.contains("parity-400/n,4,0\n"));
    let n_rows: Vec<&str> = csv
        .lines()
        .filter(|l| l.starts_with("parity-400/n,"))
        .collect();
    assert_eq!(n_rows.len(), 2);
    for case in ["curve-462", "curve-924"] {
        ok(&[
            "dioph", "--case", case, "--n-min", "-1000", "--n-max", "1000",
        ]);
    }
}

#[test]
fn asymp_golden() {
    let out = ok(&[
        "asymp",
        "-t",
        "8",
        "--n-list",
        "10,100,1000",
        "--format",
        "json",
    ]);
    assert_eq!(out, golden("asymp_8.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["AB_factorial"], serde_json::json!({"num": 1, "den": 1}));
    let text = ok(&["asymp", "-t", "4"]);
    assert!(text.contains("A = 1/4") && text.contains("B = 1/6"));
}

#[test]
fn check_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("y.json");
    std::fs::write(
        &p,
        r#"[[{"num":1,"den":1},{"num":0,"den":1}],[{"num":0,"den":1},{"num":1,"den":1}]]"#,
    )
    .unwrap();
    let f = p.to_str().unwrap();
    let out = ok(&["check", f, "--T", "6,4", "--format", "csv"]);
    assert_eq!(
        out,
        "k,moment,design\n6,0.000000000000,true\n4,8.000000000000,false\n"
    );
    let (code, _, err) = cli(&["check", "/nonexistent/file.json", "--T", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}

#[test]
fn exit_codes() {
    let (code, out, err) = cli(&["bound", "-n", "7", "-t", "5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("t must be even"));

    assert_eq!(cli(&["bound", "-n", "7"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["scan", "--T", "8,6,7", "--n-max", "9"]).0, 2);
    assert_eq!(
        cli(&["scan", "--T", "8,4", "--n-min", "9", "--n-max", "3"]).0,
        2
    );
    assert_eq!(cli(&["bound", "-n", "8", "--T", "10,4"]).0, 2);
    assert_eq!(cli(&["dioph", "--case", "nope"]).0, 2);
    assert_eq!(cli(&["asymp", "-t", "3"]).0, 2);
    assert_eq!(cli(&["bound", "-n", "24", "-t", "6", "--width", "0"]).0, 2);
    assert_eq!(
        cli(&["bound", "-n", "24", "-t", "6", "--parallel", "0"]).0,
        2
    );
    assert_eq!(
        cli(&["bound", "-n", "24", "-t", "6", "--precision", "0"]).0,
        2
    );

    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("screen"));
}

#[test]
fn width_override() {
    let coarse = ok(&[
        "bound", "-n", "10", "--T", "12,8,4", "--format", "json", "--width", "1/1000",
    ]);
    let fine = ok(&[
        "bound", "-n", "10", "--T", "12,8,4", "--format", "json", "--width", "1e-50",
    ]);
    assert_ne!(coarse, fine);
    let v: Value = serde_json::from_str(&coarse).unwrap();
    assert!(v["minimizers"][0]["poly"].is_array());
    assert!(parse_width("1e-30").is_ok());
    assert!(parse_width("2").is_err());
    assert!(parse_width("-1/3").is_err());
    assert!(parse_width("abc").is_err());
}
