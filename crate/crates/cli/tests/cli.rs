use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn hypzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .map(|r| &r["value"])
        .unwrap_or_else(|| panic!("no result {name}"))
}

#[test]
fn orders_table_for_the_modular_group() {
    let out = hypzeta(&[
        "orders",
        "--signature",
        "0,1,2:3",
        "--group",
        "modular",
        "--from",
        "-6",
        "--to",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = |point: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.split('\t').map(str::to_string).collect::<Vec<_>>())
            .find(|cols| cols[0] == point)
            .unwrap_or_else(|| panic!("row {point}"))
    };
    assert_eq!(row("0")[2], "-2");
    assert_eq!(row("-6")[2], "-2");
    assert_eq!(row("1")[1], "1");
    assert_eq!(row("-5")[1], "3");
    assert_eq!(row("-11/2")[1], "-1");

    let report = json(&hypzeta(&[
        "orders",
        "--signature",
        "0,1,2:3",
        "--from",
        "-6",
        "--to",
        "1",
        "--json",
    ]));
    assert_eq!(result(&report, "R order at 0"), -2);
    assert_eq!(result(&report, "R order at -6"), -2);
    assert_eq!(result(&report, "Z order at 0"), -1);
}

#[test]
fn ruelle_leading_reports_magnitude_and_sign_note() {
    let out = hypzeta(&[
        "ruelle-leading",
        "--signature",
        "0,1,2:3",
        "--group",
        "modular",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["command"], "ruelle-leading");
    assert_eq!(result(&report, "order"), -2);
    let coeff = result(&report, "abs_coeff").as_f64().unwrap();
    assert!((coeff - 9.0 / (PI * PI)).abs() < 1e-10);
    assert_eq!(result(&report, "phi_tilde_0_sign_discrepancy"), true);
    assert!(result(&report, "sign_note")
        .as_str()
        .unwrap()
        .contains("sign"));
}

#[test]
fn spectrum_at_trace_three_is_one_row() {
    let out = hypzeta(&["spectrum", "--max-trace", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 1);
    let cols: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(&cols[..2], ["3", "1"]);
    assert!(cols[2].starts_with("1.924847300"));
    assert!(cols[3].starts_with("6.854101966"));
}

#[test]
fn spectrum_cache_is_written_then_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("modular.csv");
    let p = path.to_str().unwrap();
    let first = json(&hypzeta(&[
        "spectrum",
        "--max-trace",
        "30",
        "--cache",
        p,
        "--json",
    ]));
    assert_eq!(result(&first, "cache"), "written");
    assert!(path.exists());
    let second = json(&hypzeta(&[
        "spectrum",
        "--max-trace",
        "30",
        "--cache",
        p,
        "--json",
    ]));
    assert_eq!(result(&second, "cache"), "hit");
    assert_eq!(
        first["results"].as_array().unwrap()[1..],
        second["results"].as_array().unwrap()[1..]
    );
    // A different max trace does not reuse the file.
    let third = json(&hypzeta(&[
        "spectrum",
        "--max-trace",
        "31",
        "--cache",
        p,
        "--json",
    ]));
    assert_eq!(result(&third, "cache"), "written");
}

#[test]
fn exit_codes() {
    // usage
    let out = hypzeta(&["orders", "--signature", "x", "--from", "0", "--to", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = hypzeta(&[
        "kappa",
        "--signature",
        "0,0,2:3:7",
        "--group",
        "modular",
        "--s",
        "0.3,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // numerical: pole of the scattering factor, and outside the convergence half-plane
    let out = hypzeta(&["kappa", "--signature", "0,1,2:3", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hypzeta(&["zeta", "--s", "0.5", "--max-trace", "20"]);
    assert_eq!(out.status.code(), Some(2));
    // verification failure under an impossible tolerance
    let out = hypzeta(&["verify", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(hypzeta(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_is_valid_on_errors() {
    for args in [
        vec![
            "orders",
            "--signature",
            "x",
            "--from",
            "0",
            "--to",
            "1",
            "--json",
        ],
        vec!["kappa", "--signature", "0,1,2:3", "--s", "1", "--json"],
        vec!["zeta", "--s", "0.5", "--json"],
        vec![
            "det-laplacian",
            "--signature",
            "1,1,2",
            "--s",
            "2",
            "--json",
        ],
    ] {
        let out = hypzeta(&args);
        assert_ne!(out.status.code(), Some(0), "{args:?}");
        let report = json(&out);
        assert!(result(&report, "error").is_string(), "{args:?}");
    }
}

#[test]
fn every_subcommand_emits_json() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["surface", "info", "--signature", "0,1,2:3"],
        vec!["kappa", "--signature", "1,1,2", "--s", "0.25,-1.6"],
        vec![
            "det-laplacian",
            "--signature",
            "0,1,2:3",
            "--s",
            "2",
            "--max-trace",
            "40",
        ],
        vec![
            "det-laplacian",
            "--signature",
            "2,0,",
            "--s",
            "0.5,1",
            "--z-value",
            "1,0",
        ],
        vec!["constants", "--signature", "2,0,"],
        vec!["zeta", "--s", "2,1", "--max-trace", "40"],
        vec!["ruelle", "--s", "2,3", "--max-trace", "60"],
    ];
    for mut args in cases {
        args.push("--json");
        let out = hypzeta(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = json(&out);
        assert!(report["results"].as_array().is_some_and(|r| !r.is_empty()));
        assert!(report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
    }
}

#[test]
fn det_laplacian_warns_left_of_the_abscissa() {
    let report = json(&hypzeta(&[
        "det-laplacian",
        "--signature",
        "0,1,2:3",
        "--s",
        "0.5,1",
        "--z-value",
        "1,0",
        "--json",
    ]));
    assert!(result(&report, "warning")
        .as_str()
        .unwrap()
        .contains("Re s"));
}

#[test]
fn verify_is_deterministic_apart_from_timestamp() {
    let run = || {
        let out = hypzeta(&["verify", "--json"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        let mut report = json(&out);
        assert!(report["timestamp"].is_u64());
        report.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&report).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    let report: Value = serde_json::from_str(&first).unwrap();
    assert!(report["checks"].as_array().unwrap().len() > 700);
    assert!(result(&report, "phi_tilde_0_sign_note").is_string());
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hypzeta.toml");
    std::fs::write(&cfg, "euler_max_trace = 30\nrel_tol = 1e-10\n").unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = json(&hypzeta(&["--config", c, "zeta", "--s", "2", "--json"]));
    assert_eq!(result(&from_file, "Z_max_trace_used"), 30);
    let flag = json(&hypzeta(&[
        "--config",
        c,
        "zeta",
        "--s",
        "2",
        "--max-trace",
        "50",
        "--json",
    ]));
    assert_eq!(result(&flag, "Z_max_trace_used"), 50);

    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(
        hypzeta(&["--config", c, "zeta", "--s", "2"]).status.code(),
        Some(1)
    );
}
