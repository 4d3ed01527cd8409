use std::io::Write;
use std::process::Command;

use serde_json::Value;

use gcd_matrix::cli::run;
use gcd_matrix::exact::Matrix;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gcd-matrix").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn lcm_example_divides_with_expected_last_row() {
    let (code, out, _) = cli(&["divides", "--set", "1,3,5,45", "--a", "1", "--b", "5", "--pair", "lcm-lcm"]);
    assert_eq!(code, 0);
    assert!(out.contains("4100625"));

    let (code, out, _) = cli(&["--json", "divides", "--set", "1,3,5,45", "--a", "1", "--b", "5", "--pair", "lcm-lcm"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["divides"], true);
    assert_eq!(v["pair"], "lcm-lcm");
    assert_eq!(v["quotient"][3], serde_json::json!(["0", "0", "0", "4100625"]));
    assert!(v.get("witness").is_none());
}

#[test]
fn analyze_reports_condition_g_failure() {
    let (code, out, _) = cli(&["--json", "analyze", "--set", "1,3,5,45"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["condition_G"], false);
    assert_eq!(v["gcd_closed"], true);
    assert_eq!(v["max_gtd"], 2);
    assert_eq!(v["set"], serde_json::json!([1, 3, 5, 45]));

    let (_, out, _) = cli(&["analyze", "--set", "1,3,5,45"]);
    assert!(out.contains("condition G: no"));
}

#[test]
fn non_multiple_exponent_gives_witness_and_exit_one() {
    let (code, out, _) = cli(&["divides", "--set", "1,2", "--a", "2", "--b", "3", "--pair", "gcd-gcd"]);
    assert_eq!(code, 1);
    assert!(out.contains("(1, 0) = -4/3"), "{out}");

    let (code, out, _) = cli(&["--json", "divides", "--set", "1,2", "--a", "2", "--b", "3", "--pair", "gcd-gcd"]);
    assert_eq!(code, 1);
    let v = &json_lines(&out)[0];
    assert_eq!(v["divides"], false);
    assert_eq!(v["witness"], serde_json::json!({"row": 1, "col": 0, "value": "-4/3"}));
}

#[test]
fn json_and_text_verdicts_agree() {
    for set in ["1,2,3,6", "1,2,3,12", "1,3,5,45", "1,2,4,8"] {
        for pair in ["gcd-gcd", "gcd-lcm", "lcm-lcm"] {
            let args = ["divides", "--set", set, "--a", "1", "--b", "2", "--pair", pair];
            let (text_code, text, _) = cli(&args);
            let mut json_args = vec!["--json"];
            json_args.extend(args);
            let (json_code, json, _) = cli(&json_args);
            assert_eq!(text_code, json_code);
            let divides = json_lines(&json)[0]["divides"].as_bool().unwrap();
            assert_eq!(text.contains(": yes"), divides, "{set} {pair}");
        }
    }
}

#[test]
fn quotient_json_round_trips() {
    let (_, out, _) = cli(&["--json", "divides", "--set", "1,2,3,4,24", "--a", "1", "--b", "11", "--pair", "lcm-lcm"]);
    let v = &json_lines(&out)[0];
    let rows: Vec<Vec<String>> = serde_json::from_value(v["quotient"].clone()).unwrap();
    let m = Matrix::from_string_rows(&rows).unwrap();
    assert_eq!(m.to_string_rows(), rows);
    assert_eq!(rows[0][0], "138334647052987");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["analyze", "--set", "1,2,x"][..],
        &["analyze", "--set", "1,2,2"],
        &["analyze", "--set", "0,1"],
        &["divides", "--set", "1,2", "--a", "1", "--b", "2", "--pair", "gcd-max"],
        &["det", "--set", "1,2"],
        &["frobnicate"],
        &["reproduce", "t99"],
        &["family", "--u", "2", "--v", "4", "--w", "2", "--b", "3"],
        &["search", "--exponents", "1-2"],
    ] {
        let (code, _, err) = cli(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn det_and_inverse_cross_checks() {
    let (code, out, _) = cli(&["--json", "det", "--set", "1,2,3,12", "--a", "1"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["det"], "16");
    assert_eq!(v["agree"], true);
    assert_eq!(v["coefficients"]["alpha"], serde_json::json!(["1", "1", "2", "8"]));

    let (code, out, _) = cli(&["--json", "det", "--set", "1,2,3,12", "--a", "1", "--kind", "lcm"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["det"], "432");

    let (code, out, _) = cli(&["--json", "det", "--set", "2,3", "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["formula"], Value::Null);

    let (code, out, _) = cli(&["--json", "inverse", "--set", "1,2,3,12", "--a", "3", "--kind", "lcm"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["structural_agrees"], true);
}

#[test]
fn verify_exit_codes() {
    let (code, _, _) = cli(&["verify", "--set", "1,2,3,6", "--a", "1", "--b", "2"]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["--json", "verify", "--set", "1,2,3,12", "--a", "1", "--b", "2"]);
    assert_eq!(code, 1);
    let v = &json_lines(&out)[0];
    assert_eq!(v["preconditions_met"], false);
}

#[test]
fn family_and_reproduce() {
    let (code, out, _) = cli(&["--json", "family", "--u", "2", "--v", "3", "--w", "2", "--b", "4"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["delta_1"], "8");
    assert_eq!(v["gcd_divides"], v["gcd_divides_quotient"]);

    for case in ["t13i", "t13ii", "t13iii-a", "t13iii-b"] {
        let (code, out, _) = cli(&["reproduce", case]);
        assert_eq!(code, 0, "{case}");
        assert!(out.trim_end().ends_with("PASS"), "{case}");
    }
}

#[test]
fn search_json_lines() {
    let (code, out, _) = cli(&[
        "--json", "search", "--n", "4", "--max-element", "45", "--exponents", "1:5", "--pairs", "lcm-lcm",
        "--condition-g", "false",
    ]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert!(lines.iter().any(|v| v["set"] == serde_json::json!([1, 3, 5, 45])));
    assert!(lines.iter().all(|v| v["divides"] == true && v["structure"]["condition_G"] == false));

    let (_, text, _) = cli(&[
        "search", "--n", "4", "--max-element", "45", "--exponents", "1:5", "--pairs", "lcm-lcm", "--condition-g",
        "false",
    ]);
    assert_eq!(text.lines().count(), lines.len());
}

#[test]
fn batch_file_input() {
    let dir = std::env::temp_dir().join(format!("gcd-matrix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sets.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# comment\n1,2,3,6\n\n1,2,3,12").unwrap();
    drop(f);
    let (code, out, _) = cli(&["--json", "verify", "--file", path.to_str().unwrap(), "--a", "1", "--b", "2"]);
    assert_eq!(code, 1);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["preconditions_met"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_gcd-matrix");
    let status = Command::new(bin)
        .args(["divides", "--set", "1,2", "--a", "2", "--b", "3", "--pair", "gcd-gcd"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin).args(["analyze"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(!status.stderr.is_empty());
}
