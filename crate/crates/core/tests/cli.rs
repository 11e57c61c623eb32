use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_currents"))
        .args(args)
        .env_remove("CURRENTS_OUT_DIR")
        .output()
        .unwrap()
}

/// The result line following the header.
fn result(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["header"]["schema_version"], 1);
    serde_json::from_str(lines[lines.len() - 1]).unwrap()
}

#[test]
fn intersect_generators() {
    assert_eq!(result(&run(&["intersect", "a", "b"]))["iota"], 1);
    assert_eq!(result(&run(&["intersect", "2*a", "1/2*ab"]))["iota"], 1);
}

#[test]
fn selfint_reduces_first() {
    let r = result(&run(&["selfint", "abB"]));
    assert_eq!(r["selfint"], 0);
    assert_eq!(r["class"], "a");
    assert_eq!(result(&run(&["selfint", "aa"]))["selfint"], 1);
}

#[test]
fn homvol_closed_form() {
    let r = result(&run(&["homvol", "--d", "3", "--N", "1", "--L", "1", "--ell", "1"]));
    assert!((r["value"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-15);
    let out = run(&["homvol", "--d", "2", "--N", "2", "--L", "1", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not locally finite"));
}

#[test]
fn preconditions_exit_with_two() {
    for args in [
        vec!["selfint", "abc"],
        vec!["--genus", "0", "--boundary", "2", "selfint", "a"],
        vec!["--metric", "/nonexistent/metric.json", "thurston", "--grid", "4"],
        vec!["thurston", "--grid", "8,4"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_failures_exit_with_three() {
    let out = run(&["orbit-count", "--curve", "a", "--grid", "8,16", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["--seed", "5", "simplex", "--N", "2", "--n", "3", "--samples", "1000"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn twist_and_decompose() {
    assert_eq!(result(&run(&["twist", "--phi", "Ta", "--on", "b"]))["image"], "1*ab");
    let r = result(&run(&["decompose", "--current", "2*a + abaB + bndry(1)"]));
    assert_eq!(r["gamma_part"], "2*a");
    assert_eq!(r["alpha_part"], "1*abaB");
}

#[test]
fn binding_and_hull() {
    assert_eq!(result(&run(&["binding", "--current", "a + b"]))["binding"], true);
    assert_eq!(result(&run(&["binding", "--current", "a"]))["binding"], false);
    let r = result(&run(&["--genus", "2", "hull", "--current", "a + b"]));
    let comp = &r["hull"]["components"][0];
    assert_eq!(
        (comp["genus"].as_i64(), comp["n_boundary"].as_i64()),
        (Some(1), Some(1))
    );
}

#[test]
fn census_writes_to_the_output_directory_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_currents"))
        .args(["census", "--L", "12", "--checkpoint-every", "50", "--out"])
        .arg(&full)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&full).unwrap();
    let rows = |t: &str| t.lines().filter(|l| !l.starts_with('#') && !l.starts_with('m')).count();
    assert!(text.lines().nth(1).unwrap().starts_with("m_1,m_2,m_3,ell_P,internal"));

    // Keep everything up to the second checkpoint and resume from there.
    let mut cut = String::new();
    let mut seen = 0;
    for line in text.lines() {
        cut.push_str(line);
        cut.push('\n');
        if line.starts_with("# checkpoint") {
            seen += 1;
            if seen == 2 {
                break;
            }
        }
    }
    let part = dir.path().join("census.csv");
    std::fs::write(&part, &cut).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_currents"))
        .args(["census", "--L", "12", "--checkpoint-every", "50", "--resume"])
        .arg(&part)
        .env("CURRENTS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(rows(&std::fs::read_to_string(&part).unwrap()), rows(&text));
}
