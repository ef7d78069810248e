use std::process::{Command, Output};

use serde_json::Value;

fn lietype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietype"))
        .args(args)
        .env_remove("LIETYPE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn first_claim(v: &Value) -> (&str, &str, bool) {
    let c = &v["claims"][0];
    (
        c["expected"].as_str().unwrap(),
        c["computed"].as_str().unwrap(),
        c["pass"].as_bool().unwrap(),
    )
}

#[test]
fn first_degree_examples() {
    let out = lietype(&["first-degree", "--p", "5", "--r", "1", "--index", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(first_claim(&v), ("7", "7", true));
    assert_eq!(v["data"]["first_degree"], 7);

    let out = lietype(&["first-degree", "--p", "2", "--r", "1", "--index", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(first_claim(&json(&out)), ("1", "1", true));

    let out = lietype(&["first-degree", "--p", "7", "--r", "2", "--index", "2"]);
    assert_eq!(first_claim(&json(&out)), ("10", "10", true));
}

#[test]
fn exponent_counterexample_is_reported() {
    let out = lietype(&[
        "exponent", "--family", "GL", "--n", "4", "--p", "3", "--r", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["exponent"], 9);
    assert!(v["data"]["note"]
        .as_str()
        .unwrap()
        .contains("h = 4 > p = 3"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "root-action",
        "--family",
        "Sp",
        "--n",
        "4",
        "--p",
        "3",
        "--r",
        "1",
    ];
    let a = lietype(&args);
    let b = lietype(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    let timed = lietype(&["--timing", "field-info", "--p", "2", "--r", "3"]);
    assert!(json(&timed)["elapsed_ms"].is_u64());
}

#[test]
fn usage_and_parameter_errors_exit_2() {
    assert_eq!(lietype(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        lietype(&["field-info", "--p", "4", "--r", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lietype(&["field-info", "--p", "2", "--r", "2", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lietype(&["field-info", "--p", "2", "--r", "2", "--modulus", "1,0,1"])
            .status
            .code(),
        Some(2)
    );
    let out = lietype(&[
        "regular-subgroup",
        "--family",
        "Sp",
        "--n",
        "4",
        "--p",
        "5",
        "--r",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not constructed"));
    assert_eq!(
        lietype(&["bockstein", "--p", "2", "--r", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_is_enforced() {
    let args = [
        "exponent", "--family", "GL", "--n", "4", "--p", "5", "--r", "1",
    ];
    let out = lietype(&[&args[..], &["--budget", "100"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("15625"));
    let out = Command::new(env!("CARGO_BIN_EXE_lietype"))
        .args(args)
        .env("LIETYPE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_subcommand_passes_on_a_small_case() {
    let cases: &[&[&str]] = &[
        &["field-info", "--p", "3", "--r", "2", "--modulus", "2,1,1"],
        &["root-system", "--type", "E", "--rank", "6"],
        &[
            "divisibility",
            "--type",
            "C",
            "--rank",
            "3",
            "--lattice",
            "weight",
        ],
        &[
            "divisibility",
            "--type",
            "G",
            "--rank",
            "2",
            "--lattice",
            "root",
        ],
        &[
            "exponent", "--family", "Sp", "--n", "4", "--p", "5", "--r", "1",
        ],
        &[
            "regular-subgroup",
            "--family",
            "GL",
            "--n",
            "3",
            "--p",
            "3",
            "--r",
            "2",
        ],
        &[
            "fixed-flags",
            "--family",
            "GL",
            "--n",
            "3",
            "--p",
            "2",
            "--r",
            "2",
        ],
        &[
            "orbits", "--family", "GL", "--n", "3", "--p", "3", "--r", "1",
        ],
        &[
            "invariants",
            "--p",
            "3",
            "--r",
            "2",
            "--index",
            "2",
            "--max-degree",
            "6",
        ],
        &["bockstein", "--p", "5", "--r", "2"],
        &[
            "root-action",
            "--family",
            "SL",
            "--n",
            "3",
            "--p",
            "2",
            "--r",
            "2",
        ],
    ];
    for args in cases {
        let out = lietype(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let v = json(&out);
        assert_eq!(v["pass"], true);
        assert!(!v["claims"].as_array().unwrap().is_empty(), "{args:?}");
        let table = lietype(&[&["--format", "table"], *args].concat());
        assert!(String::from_utf8_lossy(&table.stdout).contains("result: PASS"));
    }
}

#[test]
fn orbit_sizes_for_gl3_f3() {
    let v = json(&lietype(&[
        "orbits", "--family", "GL", "--n", "3", "--p", "3", "--r", "1",
    ]));
    assert_eq!(v["data"]["flags"], 52);
    assert_eq!(v["data"]["orbit_sizes"]["1"], 1);
}

#[test]
fn verify_all_passes() {
    let out = lietype(&["verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let criteria = v["data"]["criteria"].as_object().unwrap();
    assert_eq!(criteria.len(), 12);
    assert!(criteria.values().all(|c| c["pass"] == true));
    assert_eq!(
        lietype(&["verify-all", "--budget", "1000"]).status.code(),
        Some(2)
    );
}
