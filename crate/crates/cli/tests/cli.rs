use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn eval_pfq_geometric() {
    let v = json(&[
        "eval-pfq", "--num", "1,1", "--den", "1", "--z", "0.5", "--format", "json",
    ]);
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-13);
    assert_eq!(v["status"], "Converged");
}

#[test]
fn eval_pfq_terminating_and_rationals() {
    let v = json(&[
        "eval-pfq", "--num", "-2,1,1", "--den", "2,2", "--z", "1", "--format", "json",
    ]);
    assert_eq!(v["status"], "Terminated");
    assert_eq!(v["terms_used"], 3);
    assert!((v["value"].as_f64().unwrap() - 11.0 / 18.0).abs() < 1e-15);

    let v = json(&[
        "eval-pfq", "--num", "2,-1,1/2", "--den", "4,5/2", "--z", "1", "--format", "json",
    ]);
    assert!((v["value"].as_f64().unwrap() - 0.9).abs() < 1e-15);
}

#[test]
fn eval_pfq_human_output() {
    let out = run(&["eval-pfq", "--num", "1,1", "--den", "1", "--z", "0.5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2F1"));
    assert!(text.contains("Converged"));
}

#[test]
fn dixon_example() {
    let v = json(&[
        "dixon", "--a", "2", "--b", "-1", "--c", "1/2", "--i", "0", "--j", "0", "--format", "json",
    ]);
    assert!((v["closed_form"].as_f64().unwrap() - 0.9).abs() < 1e-14);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["oracle"]["value"], 0.9);
}

#[test]
fn dixon_negative_j_uses_symmetry() {
    let v = json(&[
        "dixon", "--a", "1", "--b", "-2", "--c", "1/2", "--i", "0", "--j", "-1", "--format", "json",
    ]);
    assert_eq!(v["evaluated_as"]["i"], -1);
    assert_eq!(v["evaluated_as"]["j"], 1);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn transform_theorem_point() {
    let v = json(&[
        "transform",
        "--case",
        "theorem",
        "--b",
        "0.4",
        "--d",
        "1.1",
        "--i",
        "-2",
        "--j",
        "1",
        "--x",
        "0.3",
        "--format",
        "json",
    ]);
    assert!(v["rel_residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn transform_special_and_general() {
    let v = json(&[
        "transform",
        "--case",
        "E31",
        "--b",
        "0.4",
        "--d",
        "1.1",
        "--x",
        "0.5",
        "--format",
        "json",
    ]);
    assert!((v["lhs"]["value"].as_f64().unwrap() - 1.189_635_216_972_850_3).abs() < 1e-12);

    let v = json(&[
        "transform",
        "--case",
        "general",
        "--a-list",
        "0.7",
        "--h-list",
        "1.3",
        "--d",
        "0.9",
        "--x",
        "-0.4",
        "--y",
        "0.5",
        "--format",
        "json",
    ]);
    assert!(v["rel_residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn dump_tables_json() {
    let v = json(&["dump-tables", "--format", "json"]);
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 28);
    let cell = |name: &str| cells.iter().find(|c| c["cell"] == name).unwrap();
    assert_eq!(cell("(0,0)")["A"], "1");
    assert_eq!(cell("(0,0)")["B"], "0");
    assert!(cell("(-1,3)")["correction"].is_string());
    for gap in ["(3,1)", "(3,2)", "(3,3)", "(2,3)", "(1,3)"] {
        assert_eq!(cell(gap)["supported"], false, "{gap}");
        assert_eq!(cell(gap)["A"], "unsupported");
    }
    let supported = cells.iter().filter(|c| c["supported"] == true).count();
    assert_eq!(supported, 23);
}

#[test]
fn dump_tables_csv() {
    let out = run(&["dump-tables", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("cell,supported,A,B,correction"));
    assert_eq!(text.lines().count(), 29);
}

#[test]
fn verify_suite_json() {
    let v = json(&["verify", "--suite", "srivastava", "--format", "json"]);
    assert_eq!(v["summary"]["counts"]["pass"], 15);
    assert_eq!(v["summary"]["counts"]["fail"], 0);
}

#[test]
fn verify_writes_file() {
    let path = std::env::temp_dir().join(format!("hyperquad-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&["verify", "--suite", "limiting", "--format", "csv", "--out", p]),
        0
    );
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("identity,coords,class,residual"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&["verify", "--suite", "srivastava", "--tol", "1e-30"]),
        1
    );
    assert_eq!(
        code(&[
            "eval-pfq",
            "--num",
            "0.7,1.1",
            "--den",
            "2.5",
            "--z",
            "1",
            "--max-terms",
            "1000"
        ]),
        1
    );
    assert_eq!(code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(code(&["eval-pfq", "--num", "1/0", "--z", "0.1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(
        code(&[
            "eval-pfq",
            "--num",
            "0.5,0.5,0.5",
            "--den",
            "1",
            "--z",
            "0.1"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "transform",
            "--case",
            "theorem",
            "--b",
            "0.3",
            "--d",
            "1.1",
            "--i",
            "0",
            "--j",
            "0",
            "--x",
            "1.5"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "transform",
            "--case",
            "theorem",
            "--b",
            "0.3",
            "--d",
            "1.1",
            "--i",
            "3",
            "--j",
            "2",
            "--x",
            "0.2"
        ]),
        4
    );
    assert_eq!(
        code(&["dixon", "--a", "1", "--b", "0.2", "--c", "0.3", "--i", "3", "--j", "1"]),
        4
    );
    assert_eq!(
        code(&["eval-pfq", "--num", "0.5", "--den", "-3", "--z", "0.1"]),
        5
    );
}

#[test]
fn errors_go_to_stderr() {
    let out = run(&[
        "eval-pfq",
        "--num",
        "0.5,0.5,0.5",
        "--den",
        "1",
        "--z",
        "0.1",
    ]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
