use std::process::Command;

use einstein_stability::cli::{execute, Outcome};
use serde_json::Value;

const CONFIGS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs");

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("einstein-stability").chain(args.iter().copied()), None)
}

fn config(name: &str) -> String {
    format!("{CONFIGS}/{name}")
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn example_configs_give_expected_verdicts() {
    let table: [(&str, &str, Option<&str>, Option<u64>); 14] = [
        ("submersion_product.json", "theorem1", Some("Unstable"), None),
        ("submersion_hopf.json", "theorem1", Some("Inconclusive"), None),
        ("canonical.json", "canonical", Some("Unstable"), None),
        ("product_base.json", "product-base", Some("Unstable"), Some(1)),
        ("torus_two_factor.json", "torus analyze", Some("Unstable"), Some(1)),
        ("torus_three_factor_exact.json", "torus analyze", Some("Unstable"), Some(2)),
        ("qk_three_equal.json", "qk analyze", Some("Unstable"), Some(2)),
        ("homog_sp.json", "homog sp", Some("Unstable"), None),
        ("homog_sp_scan.json", "homog sp", None, None),
        ("circle_spectrum.json", "circle spectrum", Some("Unstable"), None),
        ("circle_equality.json", "circle spectrum", Some("Inconclusive"), None),
        ("circle_fscan.json", "circle f-scan", Some("Unstable"), None),
        ("circle_pointwise.json", "circle pointwise", Some("Inconclusive"), None),
        ("circle_kahler.json", "circle kahler-bound", Some("Unstable"), None),
    ];
    for (file, command, verdict, coindex) in table {
        let out = run(&["check", "--config", &config(file)]);
        assert_eq!(out.code, 0, "{file}: {}", out.stdout);
        let v = json(&out);
        assert_eq!(v["command"], command, "{file}");
        assert_eq!(v["verdict"].as_str(), verdict, "{file}");
        assert_eq!(v["coindex_lower_bound"].as_u64(), coindex, "{file}");
        assert!(v["checks"].as_object().unwrap().values().all(|c| c == true), "{file}");
    }
}

#[test]
fn invalid_configs_report_structured_errors() {
    for (file, kind) in [
        ("torus_zero_column.json", "SchemaError"),
        ("submersion_violation.json", "ConstraintViolation"),
        ("syntax_error.json", "ParseError"),
    ] {
        let out = run(&["check", "--config", &config(&format!("invalid/{file}"))]);
        assert_eq!(out.code, 1, "{file}");
        assert_eq!(json(&out)["error"]["kind"], kind, "{file}");
        assert!(out.stderr.starts_with("error: "));
    }
    let out = run(&["check", "--config", &config("invalid/syntax_error.json")]);
    assert_eq!(json(&out)["error"]["location"], "line 3, column 27");
}

#[test]
fn subcommands_match_check() {
    for (file, sub) in [
        ("submersion_product.json", vec!["theorem1"]),
        ("canonical.json", vec!["canonical"]),
        ("product_base.json", vec!["product-base"]),
        ("torus_three_factor_exact.json", vec!["torus", "analyze"]),
        ("qk_three_equal.json", vec!["qk", "analyze"]),
        ("homog_sp.json", vec!["homog", "sp"]),
        ("circle_kahler.json", vec!["circle", "kahler-bound"]),
        ("circle_pointwise.json", vec!["circle", "pointwise"]),
        ("circle_fscan.json", vec!["circle", "f-scan"]),
    ] {
        let path = config(file);
        let mut args = sub.clone();
        args.extend(["--config", path.as_str()]);
        let direct = run(&args);
        let checked = run(&["check", "--config", &path]);
        assert_eq!(direct, checked, "{file}");
    }
}

#[test]
fn wrong_subcommand_for_kind_is_rejected() {
    let out = run(&["torus", "solve", "--config", &config("qk_three_equal.json")]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["error"]["kind"], "SchemaError");
}

#[test]
fn torus_solve_reports_the_two_factor_solution() {
    let out = run(&["torus", "solve", "--config", &config("torus_two_factor.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&out);
    let sols = v["quantities"]["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    let x: Vec<f64> = sols[0]["x"].as_array().unwrap().iter().map(|t| t.as_f64().unwrap()).collect();
    assert!(x.iter().all(|t| (t - 4.0 / 3.0).abs() < 1e-8), "{x:?}");
}

#[test]
fn gauge_flag_rescales_the_solution() {
    let out = run(&["--gauge-E", "0.75", "torus", "solve", "--config", &config("torus_two_factor.json")]);
    let v = json(&out);
    let x = v["quantities"]["solutions"][0]["x"][0].as_f64().unwrap();
    assert!((x - 16.0 / 9.0).abs() < 1e-8, "{x}");
}

#[test]
fn float_mode_override_keeps_the_verdict() {
    let out = run(&["--mode", "float", "check", "--config", &config("torus_three_factor_exact.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["verdict"], "Unstable");
    assert_eq!(v["coindex_lower_bound"], 2);
}

#[test]
fn markdown_rendering() {
    let out = run(&["--format", "md", "check", "--config", &config("qk_three_equal.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("# qk analyze\n"));
    assert!(out.stdout.contains("**Unstable** (coindex ≥ 2)"));
    assert!(out.stdout.contains("## Input"));
}

#[test]
fn reports_are_deterministic() {
    for file in ["torus_two_factor.json", "homog_sp_scan.json", "circle_fscan.json"] {
        let a = run(&["check", "--config", &config(file)]);
        let b = run(&["check", "--config", &config(file)]);
        assert_eq!(a, b, "{file}");
    }
    let a = run(&["verify", "--seed", "7", "--cases", "5"]);
    assert_eq!(a, run(&["verify", "--seed", "7", "--cases", "5"]));
    assert_eq!(a.code, 0, "{}", a.stdout);
}

#[test]
fn environment_seed_overrides_flag() {
    let from_env = execute(["einstein-stability", "verify", "--seed", "1", "--cases", "3"], Some("2"));
    let from_flag = run(&["verify", "--seed", "2", "--cases", "3"]);
    assert_eq!(from_env, from_flag);
    assert_eq!(json(&from_env)["input"]["seed"], 2);
}

#[test]
fn verify_lists_every_suite() {
    let v = json(&run(&["verify", "--cases", "2"]));
    let suites = v["quantities"]["suites"].as_object().unwrap();
    assert_eq!(suites.len(), einstein_stability::verify::SUITES.len());
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_einstein-stability");
    let ok = Command::new(bin).args(["homog", "sp", "--m", "3", "--q", "1", "--k", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["quantities"]["r·š − 2n·ŝ"], "-8");

    let usage = Command::new(bin).arg("no-such-command").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));

    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));

    let missing = Command::new(bin).args(["check", "--config", "/nonexistent/config.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error: "));
}
