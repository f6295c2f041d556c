use std::path::Path;
use std::process::{Command, Output};

const MB2: &str = "(w1*dw2 - w2*dw1) * S^-2";

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jouanolou")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn residue_normalization_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let expr = format!("{MB2} * dz1*dz2");
    let o = run(&["residue", "--n", "2", &expr, "--out", "cert.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("1"));
    assert!(out.contains("certificate: cert.json"));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["value"], "1");
}

#[test]
fn residue_vanishes_at_origin_and_off_bidegree() {
    let dir = tempfile::tempdir().unwrap();
    let expr = format!("(z1*z2) * {MB2} * dz1*dz2");
    let o = run(&["residue", "--n", "2", &expr], dir.path());
    assert_eq!(stdout(&o).lines().next(), Some("0"));
    assert!(dir.path().join("residue-certificate.json").exists());
    let o = run(&["residue", "--n", "2", MB2], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0 (bidegree vanishing)"));
}

#[test]
fn residue_from_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("omega.txt"), "(3 + z1) * w1 * S^-1 * dz1\n").unwrap();
    let o = run(&["residue", "--n", "1", "--file", "omega.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().next(), Some("3"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = run(&["residue", "--n", "2", "w1"], p);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("z*-degree 1 ≠ 0"));
    assert_eq!(run(&["residue", "--n", "2", "z1 +"], p).status.code(), Some(2));
    assert_eq!(run(&["suite", "bogus"], p).status.code(), Some(2));
    assert_eq!(run(&["suite", "cohomology", "--n", "9"], p).status.code(), Some(2));
    let expr = format!("{MB2} * dz1*dz2");
    assert_eq!(run(&["residue", "--n", "2", "--escalation-cap", "1", &expr], p).status.code(), Some(3));
    // a pole cap too small to reach stabilization is a check failure, not an error
    let o = run(&["suite", "cohomology", "--n", "2", "--weight-box", "1", "--pole-max", "0", "--out", "r.json"], p);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_prints_a_reparseable_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["parse", "--n", "2", MB2], dir.path());
    let printed = stdout(&o).lines().next().unwrap().to_string();
    let again = run(&["parse", "--n", "2", &printed], dir.path());
    assert_eq!(stdout(&again), stdout(&o));
    assert!(stdout(&o).contains("bidegree: (0, 1)"));
}

#[test]
fn suite_report_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let args = |jobs: &'static str, out: &'static str| {
        vec!["suite", "spectrum", "--n", "2", "--weight-box", "2", "--seed", "7", "--jobs", jobs, "--out", out]
    };
    assert_eq!(run(&args("1", "a.json"), p).status.code(), Some(0));
    assert_eq!(run(&args("4", "b.json"), p).status.code(), Some(0));
    let strip = |f: &str| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.join(f)).unwrap()).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["millis"] = 0.into();
        }
        v
    };
    let a = strip("a.json");
    assert_eq!(a, strip("b.json"));
    assert_eq!(a["suite"], "spectrum");
    assert_eq!(a["seed"], 7);
    assert_eq!(a["summary"]["failed"], 0);
}
