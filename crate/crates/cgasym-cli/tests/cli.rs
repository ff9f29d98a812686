//! End-to-end tests of the installed binary: output contracts, exit codes,
//! file emission and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cgasym"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Unique scratch path for tests that write files.
fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("cgasym-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn eval_reproduces_reference_value() {
    let out = run(&["eval", "--q", "200,100,300,150,400,250"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("value = 0.0703499"), "got: {text}");
    assert!(text.contains("full 0.07034988548695568"), "got: {text}");
    assert!(text.contains("region = Allowed"), "got: {text}");
}

#[test]
fn eval_accepts_both_half_integer_spellings() {
    let slash = run(&["eval", "--q", "1/2,1/2,1/2,-1/2,1,0"]);
    let decimal = run(&["eval", "--q", "0.5,0.5,0.5,-0.5,1,0"]);
    assert_eq!(code(&slash), 0);
    assert_eq!(code(&decimal), 0);
    assert_eq!(stdout(&slash), stdout(&decimal));
    assert!(stdout(&slash).contains("exact = sqrt(1/2)"));
}

#[test]
fn eval_asymptotic_on_boundary_exits_3() {
    // beta^2 = 0 here; the exact method still works but asymptotics refuse
    let exact = run(&["eval", "--q", "3,-2,6,4,7,2"]);
    assert_eq!(code(&exact), 0);
    assert!(stdout(&exact).contains("region = Boundary"));
    for method in ["first", "allreal", "higher"] {
        let out = run(&["eval", "--q", "3,-2,6,4,7,2", "--method", method]);
        assert_eq!(code(&out), 3, "method {method}: {}", stderr(&out));
    }
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["eval", "--q", "garbage"],
        vec!["eval", "--q", "1,0,1,0,2"],
        vec!["eval", "--q", "1,0.3,1,0,2,0.3"],
        vec!["eval", "--q", "1,0,1,0,2,0", "--method", "bogus"],
        vec!["eval", "--q", "1,0,1,0,2,0", "--format", "yaml"],
        vec!["model1d", "--m", "0", "--n", "3"],
        vec!["sweep", "--j1", "1", "--j2", "1", "--j", "2", "--m1", "3:1"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "args {args:?} left stderr empty");
    }
}

#[test]
fn eval_json_has_the_documented_fields() {
    let out = run(&["eval", "--q", "200,100,300,150,400,250", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["q"]["j1"], "200");
    assert_eq!(v["q"]["m"], "250");
    assert_eq!(v["method"], "exact");
    let value = v["value"].as_f64().expect("numeric value");
    assert!((value - 0.07034988548695568).abs() < 1e-17);
    assert_eq!(v["exact"]["sign"], 1);
    assert!(v["exact"]["display"].as_str().unwrap().starts_with("sqrt("));
    assert_eq!(v["region"]["tag"], "Allowed");
    assert!(v["beta_squared"]["exact"].is_string());
    assert!(v["beta_squared"]["value"].is_f64());
    assert_eq!(v["near_caustic"], false);
}

#[test]
fn eval_json_boundary_and_forbidden_regions_serialize() {
    let boundary = run(&["eval", "--q", "3,-2,6,4,7,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&boundary)).unwrap();
    assert_eq!(v["region"]["tag"], "Boundary");

    let forb = run(&["eval", "--q", "1/2,1/2,1/2,-1/2,1,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&forb)).unwrap();
    assert_eq!(v["region"]["tag"], "Forbidden");
    assert_eq!(v["region"]["subregion"], "I");
    assert!(v["region"]["sign_function"].is_i64());
    assert!(v["region"]["branch"].is_string());
}

#[test]
fn sweep_is_deterministic_and_labels_all_subregions() {
    let a = run(&["sweep", "--j1", "2", "--j2", "3", "--j", "4"]);
    let b = run(&["sweep", "--j1", "2", "--j2", "3", "--j", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "sweep output must be byte-identical");
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m1,m2,region,subregion,sign_function,beta2,exact,first,higher,rel_err_first,rel_err_higher"
    );
    for sub in ["I", "II", "III", "IV", "V", "VI"] {
        assert!(
            text.lines().any(|l| l.split(',').nth(3) == Some(sub)),
            "subregion {sub} missing from the 2,3,4 grid"
        );
    }
    // rows are ordered with m1 outer, m2 inner, both ascending
    let firsts: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(firsts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn sweep_forbidden_rows_match_the_sign_function() {
    let out = run(&["sweep", "--j1", "2", "--j2", "3", "--j", "4"]);
    let text = stdout(&out);
    let mut checked = 0;
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[2] != "Forbidden" || cells[6].is_empty() || cells[6] == "0" {
            continue;
        }
        let expected_negative = cells[4] == "-1";
        assert_eq!(
            cells[6].starts_with('-'),
            expected_negative,
            "row {line}: exact sign disagrees with sign_function"
        );
        checked += 1;
    }
    assert!(checked > 5, "too few forbidden rows exercised");
}

#[test]
fn sweep_boundary_rows_keep_exact_but_not_asymptotics() {
    let out = run(&["sweep", "--j1", "1", "--j2", "1", "--j", "2"]);
    let text = stdout(&out);
    let mut boundary_rows = 0;
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[2] != "Boundary" {
            continue;
        }
        boundary_rows += 1;
        assert!(!cells[6].is_empty(), "boundary row lost its exact value: {line}");
        assert!(cells[7].is_empty() && cells[8].is_empty(), "asymptotics on boundary: {line}");
    }
    assert!(boundary_rows > 0, "the 1,1,2 grid should contain boundary points");
}

#[test]
fn sweep_honours_projection_ranges_and_out_file() {
    let path = scratch("range.csv");
    let out = run(&[
        "sweep", "--j1", "2", "--j2", "3", "--j", "4",
        "--m1", "0:1", "--m2", "-1:1",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty(), "--out should silence stdout");
    let text = std::fs::read_to_string(&path).expect("csv written");
    std::fs::remove_file(&path).ok();
    // 2 m1 values x 3 m2 values + header
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| {
        let m1: f64 = l.split(',').next().unwrap().parse().unwrap();
        (0.0..=1.0).contains(&m1)
    }));
}

#[test]
fn sweep_range_with_wrong_parity_exits_2() {
    // j1 = 3/2 needs half-integer projections; integers must be rejected
    let out = run(&["sweep", "--j1", "3/2", "--j2", "1", "--j", "3/2", "--m1", "0:1"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn config_exact_cap_empties_exact_cells() {
    let path = scratch("cap.conf");
    std::fs::write(&path, "exact_cap = 4\n").unwrap();
    let out = bin()
        .args(["--config", path.to_str().unwrap(), "sweep", "--j1", "3", "--j2", "3", "--j", "4"])
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert!(cells[6].is_empty(), "exact cell should be capped away: {line}");
        assert!(cells[9].is_empty() && cells[10].is_empty());
    }
}

#[test]
fn missing_explicit_config_exits_2() {
    let out = run(&["--config", "/nonexistent/cgasym.conf", "eval", "--q", "1,0,1,0,2,0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot read config"));
}

#[test]
fn region_json_describes_the_geometry() {
    let out = run(&["region", "--j1", "2", "--j2", "3", "--j", "4"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["j1"], "2");
    assert_eq!(v["hexagon_edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["tangency_points"].as_array().unwrap().len(), 6);
    for key in ["a20", "a11", "a02", "constant"] {
        assert!(v["ellipse"][key].is_number(), "missing ellipse key {key}");
    }
    // every tangency point must satisfy its edge equation a*2m1 + b*2m2 = c
    let edges = v["hexagon_edges"].as_array().unwrap();
    let points = v["tangency_points"].as_array().unwrap();
    for (e, p) in edges.iter().zip(points) {
        let (a, b, c) = (
            e["a"].as_f64().unwrap(),
            e["b"].as_f64().unwrap(),
            e["c"].as_f64().unwrap(),
        );
        let (m1, m2) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!(
            (a * 2.0 * m1 + b * 2.0 * m2 - c).abs() < 1e-9,
            "tangency point {p} misses its edge {e}"
        );
    }
}

#[test]
fn region_rejects_triangle_violations() {
    let out = run(&["region", "--j1", "1", "--j2", "1", "--j", "5"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn model1d_prints_closed_form_and_asymptotics() {
    let out = run(&["model1d", "--m", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("F(2, 1) = 2/3"), "got: {text}");
    assert!(text.contains("asymptotic = "), "got: {text}");
    assert!(text.contains("quadrature(tol=1e-9)"), "got: {text}");
}

#[test]
fn model1d_reports_the_critical_ratio_without_failing() {
    let out = run(&["model1d", "--m", "9", "--n", "9"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("undefined at the critical ratio"));
}

#[test]
fn model1d_json_shape() {
    let out = run(&["model1d", "--m", "15", "--n", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["m"], 15);
    assert_eq!(v["n"], 4);
    assert!(v["exact"]["value"].is_f64());
    assert!(v["exact"]["coefficient"].is_string());
    assert!(v["exact"]["times_pi"].is_boolean());
    assert!(v["asymptotic"].is_f64());
    assert!(v["single_branch_gaussian"].is_f64());
    assert!(v["quadrature"].is_f64());
    assert_eq!(v["critical_ratio"], false);
    let critical = run(&["model1d", "--m", "9", "--n", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&critical)).unwrap();
    assert!(v["asymptotic"].is_null());
    assert_eq!(v["critical_ratio"], true);
}

#[test]
fn verify_quick_passes_and_is_deterministic() {
    let a = run(&["verify", "--level", "quick"]);
    assert_eq!(code(&a), 0, "stderr: {}", stderr(&a));
    assert!(stdout(&a).contains("verify: 7/7 checks passed (level quick, seed 20260814)"));
    let b = run(&["verify", "--level", "quick"]);
    assert_eq!(a.stdout, b.stdout, "verify output must be byte-identical");
}

#[test]
fn verify_accepts_an_explicit_seed() {
    let out = run(&["verify", "--seed", "7", "--level", "quick"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("seed 7"));
}
