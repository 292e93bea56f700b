use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leglab"))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("leglab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_checks(o: &Output) -> Vec<serde_json::Value> {
    serde_json::from_slice::<serde_json::Value>(&o.stdout)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

fn check_value(checks: &[serde_json::Value], name: &str) -> f64 {
    checks
        .iter()
        .find(|c| c["check"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn lance_thomas_unknot_has_tb_zero() {
    let d = scratch("lt");
    let o = run(&d, &["gallery", "lance-thomas-unknot", "--level", "3", "--K", "1", "--out", "u3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&d, &["tb", "--form", "minus_ydx", "--in", "u3.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    // the closing segments are not Legendrian
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = run(&d, &["tb", "--strict", "--form", "minus_ydx", "--in", "u3.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flat_lift_verifies() {
    let d = scratch("flat");
    std::fs::write(
        d.join("square.json"),
        r#"{"dim": 2, "closed": false, "vertices": [[0,0],[1,0],[1,1],[0,1],[0,0.5]]}"#,
    )
    .unwrap();
    let o = run(&d, &["lift", "--form", "xdy", "--in", "square.json", "--out", "l.json", "--z0", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&d, &["--json", "verify", "--form", "xdy", "--in", "l.json"]);
    assert_eq!(o.status.code(), Some(0));
    let checks = json_checks(&o);
    assert!(check_value(&checks, "relative_residual") <= 1e-12);
    assert!(checks.iter().all(|c| c["pass"] == true));
    for c in &checks {
        for key in ["check", "value", "bound", "pass"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn lemniscate_tb_and_crossings_csv() {
    let d = scratch("lem");
    assert_eq!(run(&d, &["gallery", "lemniscate", "--out", "l.json"]).status.code(), Some(0));
    let o = run(&d, &["tb", "--strict", "--form", "xdy", "--in", "l.json", "--crossings", "x.csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1");
    let csv = std::fs::read_to_string(d.join("x.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn bypass_correct_lift_pipeline() {
    let d = scratch("bypass");
    assert_eq!(run(&d, &["gallery", "figure-eight", "--out", "fe.json"]).status.code(), Some(0));
    let o = run(&d, &["bypass", "--in", "fe.json", "--out", "b.json", "--attach", "1,33", "--svg", "b.svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(d.join("b.svg")).unwrap().starts_with("<svg"));
    let o = run(
        &d,
        &["--json", "correct", "--form", "xdy", "--in", "b.json", "--out", "c.json", "--centre", "3,0", "--half", "0.5", "--span", "44,64"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(check_value(&json_checks(&o), "max_integral_drift") <= 1e-9);
    let o = run(&d, &["--json", "lift", "--form", "xdy", "--in", "c.json", "--out", "l.json", "--base", "77"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(check_value(&json_checks(&o), "max_relative_residual") <= 1e-8);
}

#[test]
fn usage_errors_exit_64() {
    let d = scratch("usage");
    assert_eq!(run(&d, &["tb", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&d, &["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&d, &["gallery", "nonsense", "--out", "x.json"]).status.code(), Some(64));
    assert_eq!(run(&d, &["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_input_exits_2() {
    let d = scratch("invalid");
    assert_eq!(run(&d, &["verify", "--form", "xdy", "--in", "missing.json"]).status.code(), Some(2));
    std::fs::write(d.join("bad.json"), "{ not json").unwrap();
    assert_eq!(run(&d, &["chordarc", "--in", "bad.json"]).status.code(), Some(2));
    assert_eq!(run(&d, &["gallery", "cusp", "--out", "c.json"]).status.code(), Some(0));
    let o = run(&d, &["verify", "--form", "xdy", "--in", "c.json", "--tol=-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&d, &["gallery", "cusp", "--out", "no/such/dir/c.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let d = scratch("det");
    for out in ["a.json", "b.json"] {
        let o = run(&d, &["gallery", "lance-thomas", "--level", "4", "--out", out]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(d.join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(d.join("b.json")).unwrap());
    let x = stdout(&run(&d, &["--json", "chordarc", "--in", "a.json"]));
    let y = stdout(&run(&d, &["--json", "chordarc", "--in", "a.json"]));
    assert_eq!(x, y);
}

#[test]
fn spiral_maps_and_flow() {
    let d = scratch("spiral");
    assert_eq!(run(&d, &["gallery", "spiral-leaf", "--out", "s.json"]).status.code(), Some(0));
    let o = run(&d, &["--json", "apply-map", "--map", "log-spiral", "--in", "s.json", "--out", "m.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(check_value(&json_checks(&o), "output_relative_residual") <= 1e-8);
    let o = run(&d, &["apply-map", "--map", "log-spiral-inverse", "--in", "m.json", "--out", "back.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(
        &d,
        &["--json", "flow", "--form", "rot", "--in", "s.json", "--out", "f.json", "--hamiltonian", "1,0,0,0;0.5,1,0,1", "--t", "0.2"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(check_value(&json_checks(&o), "output_relative_residual") <= 1e-7);
    let o = run(&d, &["flow", "--form", "rot", "--in", "s.json", "--out", "f.json", "--hamiltonian", "1,0", "--t", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_single_criterion() {
    let d = scratch("suite");
    let o = run(&d, &["suite", "acceptance", "--only", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    assert_eq!(run(&d, &["suite", "acceptance", "--only", "42"]).status.code(), Some(2));
}
