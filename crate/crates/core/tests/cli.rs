use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracid::io::load_series;
use tempfile::TempDir;

fn fracid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = fracid(args);
    assert!(
        out.status.success(),
        "fracid {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Runs a failing command and returns its error class.
fn error_class(args: &[&str]) -> String {
    let out = fracid(args);
    assert!(!out.status.success(), "fracid {args:?} unexpectedly succeeded");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    let rest = stderr.strip_prefix("error[").expect("error prefix");
    rest[..rest.find(']').unwrap()].to_string()
}

fn report_value(report: &str, key: &str) -> Option<f64> {
    report.lines().find_map(|l| {
        let (k, v) = l.split_once(" = ")?;
        (k == key).then(|| v.parse().unwrap())
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const INTEGER: [&str; 10] = ["--a2", "1", "--a1", "3", "--a0", "2", "--alpha", "2", "--beta", "1"];
const FRACTIONAL: [&str; 10] = ["--a2", "0.8", "--a1", "0.5", "--a0", "1", "--alpha", "2.2", "--beta", "0.9"];

fn simulate_data(dir: &TempDir, name: &str, model: &[&str]) -> String {
    let path = dir.path().join(name);
    let mut args = vec!["simulate", "--with-input", "-o", path_str(&path)];
    args.extend_from_slice(model);
    ok(&args);
    path_str(&path).to_string()
}

#[test]
fn simulate_integer_step_settles_at_half() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("y.dat");
    let mut args = vec!["simulate", "--step", "0.05", "--horizon", "20", "-o", path_str(&out)];
    args.extend_from_slice(&INTEGER);
    ok(&args);
    let y = load_series(&out).unwrap().input;
    assert_eq!(y.len(), 401);
    assert!((y.values().last().unwrap() - 0.5).abs() < 1e-4);
}

#[test]
fn simulate_fractional_overshoots() {
    let mut args = vec!["simulate"];
    args.extend_from_slice(&FRACTIONAL);
    let text = ok(&args);
    let values: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    let peak = values.iter().cloned().fold(f64::MIN, f64::max);
    assert!(peak > 1.0);
    assert!((values.last().unwrap() - 1.0).abs() < 0.1);
}

#[test]
fn gain_query() {
    let mut args = vec!["simulate", "--gain"];
    args.extend_from_slice(&INTEGER);
    assert_eq!(ok(&args), "steady_state_gain = 0.5\n");
    let class = error_class(&["simulate", "--gain", "--a2", "1", "--a1", "1", "--a0", "0", "--alpha", "2", "--beta", "1"]);
    assert_eq!(class, "ZeroA0");
}

#[test]
fn derive_ramp_identity_and_quadratic() {
    let dir = TempDir::new().unwrap();
    let ramp = dir.path().join("ramp.dat");
    let quad = dir.path().join("quad.dat");
    let mut ramp_text = String::new();
    let mut quad_text = String::new();
    for m in 0..40 {
        let t = m as f64 * 0.1;
        ramp_text.push_str(&format!("{t} {t}\n"));
        quad_text.push_str(&format!("{t} {}\n", t * t));
    }
    fs::write(&ramp, ramp_text).unwrap();
    fs::write(&quad, quad_text).unwrap();

    let d1 = dir.path().join("d1.dat");
    ok(&["derive", "-i", path_str(&ramp), "--order", "1", "-o", path_str(&d1)]);
    let d1 = load_series(&d1).unwrap().input;
    assert!(d1.values()[1..].iter().all(|v| (v - 1.0).abs() < 1e-9));

    let d0 = dir.path().join("d0.dat");
    ok(&["derive", "-i", path_str(&ramp), "--order", "0", "-o", path_str(&d0)]);
    let original = load_series(&ramp).unwrap().input;
    let d0 = load_series(&d0).unwrap().input;
    assert_eq!(d0.values(), original.values());

    let d2 = dir.path().join("d2.dat");
    ok(&["derive", "-i", path_str(&quad), "--order", "2", "-o", path_str(&d2)]);
    let d2 = load_series(&d2).unwrap().input;
    assert!(d2.values()[2..].iter().all(|v| (v - 2.0).abs() < 1e-9));
}

#[test]
fn fit_exact_forced_and_singular() {
    let dir = TempDir::new().unwrap();
    let frac = simulate_data(&dir, "frac.dat", &FRACTIONAL);

    let exact = ok(&["fit", "-i", &frac, "--alpha", "2.2", "--beta", "0.9"]);
    assert_eq!(report_value(&exact, "a2"), Some(0.8));
    assert_eq!(report_value(&exact, "a1"), Some(0.5));
    assert_eq!(report_value(&exact, "a0"), Some(1.0));

    let forced = ok(&["fit", "-i", &frac, "--alpha", "2", "--beta", "1"]);
    let a2 = report_value(&forced, "a2").unwrap();
    let a1 = report_value(&forced, "a1").unwrap();
    assert!((a2 - 0.76639).abs() / 0.76639 < 0.1, "{forced}");
    assert!((a1 - 0.23184).abs() / 0.23184 < 0.1, "{forced}");
    assert!(report_value(&forced, "residual").is_some());

    assert_eq!(
        error_class(&["fit", "-i", &frac, "--alpha", "1", "--beta", "1"]),
        "SingularNormalMatrix"
    );
}

#[test]
fn identify_point_intervals_and_determinism() {
    let dir = TempDir::new().unwrap();
    let data = simulate_data(&dir, "int.dat", &INTEGER);
    let args = [
        "identify", "-i", &data, "--alpha-min", "2", "--alpha-max", "2", "--beta-min", "1",
        "--beta-max", "1",
    ];
    let report = ok(&args);
    assert_eq!(report_value(&report, "a2"), Some(1.0));
    assert_eq!(report_value(&report, "a1"), Some(3.0));
    assert_eq!(report_value(&report, "a0"), Some(2.0));
    assert_eq!(report_value(&report, "rounds"), Some(1.0));
    assert_eq!(ok(&args), report);
}

#[test]
fn identify_full_search_writes_report_and_response() {
    let dir = TempDir::new().unwrap();
    let data = simulate_data(&dir, "int.dat", &INTEGER);
    let report_path = dir.path().join("report.txt");
    let response_path = dir.path().join("fit.dat");
    ok(&[
        "identify", "-i", &data, "--report", path_str(&report_path), "-o", path_str(&response_path),
    ]);
    let report = fs::read_to_string(&report_path).unwrap();
    for key in ["a2", "a1", "a0", "alpha", "beta", "Q", "rounds"] {
        assert!(report_value(&report, key).is_some(), "missing {key} in\n{report}");
    }
    assert!((report_value(&report, "alpha").unwrap() - 2.0).abs() < 1e-3);
    assert!((report_value(&report, "beta").unwrap() - 1.0).abs() < 1e-3);
    let rounds = report_value(&report, "rounds").unwrap() as usize;
    let trace_lines = report.lines().skip_while(|l| !l.starts_with("# round")).skip(1).count();
    assert_eq!(trace_lines, rounds);
    assert_eq!(load_series(&response_path).unwrap().input.len(), 401);
}

#[test]
fn identify_two_member_report_omits_a2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("furnace.dat");
    ok(&[
        "simulate", "--with-input", "--step", "10", "--horizon", "10000", "--a1", "800", "--a0",
        "1.4", "--beta", "0.75", "-o", path_str(&path),
    ]);
    let report = ok(&[
        "identify", "-i", path_str(&path), "--model-kind", "two-member", "--beta-min", "0.33",
        "--beta-max", "1.3",
    ]);
    assert!(report.contains("model = two-member"));
    assert_eq!(report_value(&report, "a2"), None);
    assert_eq!(report_value(&report, "alpha"), None);
    assert!((report_value(&report, "beta").unwrap() - 0.75).abs() < 1e-3);
    assert!((report_value(&report, "a1").unwrap() - 800.0).abs() < 8.0);
}

#[test]
fn input_errors_have_classes() {
    let dir = TempDir::new().unwrap();
    let bad_grid = dir.path().join("grid.dat");
    fs::write(&bad_grid, "0 1 0\n0.05 1 0\n0.11 1 0\n").unwrap();
    assert_eq!(error_class(&["identify", "-i", path_str(&bad_grid)]), "NonUniformGrid");

    let comma = dir.path().join("comma.dat");
    fs::write(&comma, "0 1 0\n0,05 1 0,001\n0,1 1 0,004\n").unwrap();
    let out = fracid(&["fit", "-i", path_str(&comma), "--alpha", "2", "--beta", "1"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.starts_with("error[ParseError]:"));
    assert!(stderr.contains(":2:"), "{stderr}");

    let empty = dir.path().join("empty.dat");
    fs::write(&empty, "").unwrap();
    assert_eq!(error_class(&["derive", "-i", path_str(&empty), "--order", "1"]), "TooShort");

    let missing = dir.path().join("missing.dat");
    assert_eq!(error_class(&["derive", "-i", path_str(&missing), "--order", "1"]), "IoError");

    let input_only = dir.path().join("u.dat");
    fs::write(&input_only, "0 1\n1 1\n2 1\n").unwrap();
    assert_eq!(
        error_class(&["fit", "-i", path_str(&input_only), "--alpha", "2", "--beta", "1"]),
        "ParseError"
    );
    assert_eq!(
        error_class(&["identify", "-i", path_str(&input_only), "--epsilon", "0"]),
        "InvalidConfig"
    );
}

#[test]
fn zero_output_has_no_feasible_candidate() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("zero.dat");
    let text: String = (0..50).map(|m| format!("{} 1 0\n", m as f64 * 0.1)).collect();
    fs::write(&path, text).unwrap();
    assert_eq!(
        error_class(&["identify", "-i", path_str(&path), "--epsilon", "0.5"]),
        "NoFeasibleCandidate"
    );
}
