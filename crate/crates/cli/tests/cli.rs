use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nls-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL: &str = "n = 32\nlength = 16.0\ndata = gaussian\namplitude = 0.5\ndt = 0.01\nhorizon = 0.1\ns = 0.9\n";

#[test]
fn thresholds_pass_and_print_csv() {
    let out = lab(&["thresholds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# experiment = thresholds"));
    assert!(text.contains("inputs,name,value,residual,anchor"));
}

#[test]
fn unknown_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.cfg", "n = 32\nfoo = 1\n");
    let out = lab(&["--config", &cfg, "simulate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("foo"), "{err}");
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(lab(&["check", "strichartz"]).status.code(), Some(2));
    assert_eq!(lab(&[]).status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_and_writes_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("end.nlsf");
    let cfg = write(
        dir.path(),
        "run.cfg",
        &format!("{}checkpoint = {}\n", SMALL.replace("gaussian", "rough"), ck.display()),
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = lab(&["--config", &cfg, "--out", p.to_str().unwrap(), "--seed", "11", "simulate"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    assert!(String::from_utf8(ra).unwrap().contains("# config: seed = 11"));

    let inspect = lab(&["checkpoint", "inspect", ck.to_str().unwrap()]);
    assert_eq!(inspect.status.code(), Some(0));
    assert!(String::from_utf8(inspect.stdout).unwrap().contains("t,1.0000000000000001e-1"));
    let convert = lab(&["checkpoint", "convert", ck.to_str().unwrap()]);
    assert_eq!(convert.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(convert.stdout).unwrap().lines().filter(|l| !l.starts_with('#')).count(),
        1 + 32 * 32
    );
}

#[test]
fn corrupt_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "junk.nlsf", "NLSX not a checkpoint");
    assert_eq!(lab(&["checkpoint", "inspect", &p]).status.code(), Some(2));
}

#[test]
fn single_check_selector() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.cfg", &format!("{SMALL}sweep_n = 2, 4\n"));
    let out = lab(&["--config", &cfg, "--jobs", "2", "check", "bernstein"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(body.len(), 4);
    assert!(body.iter().all(|l| l.starts_with("bernstein,")));
}

#[test]
fn failing_check_exits_one() {
    // three cutoffs across one rough sample: the sandwich spread exceeds 20%
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.cfg",
        "n = 64\nlength = 6.283185307179586\ns = 0.6\nsamples = 1\nsweep_n = 2, 4, 8\n",
    );
    let out = lab(&["--config", &cfg, "check", "sandwich"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn revival_is_a_numerical_abort() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "r.cfg",
        "n = 32\nlength = 16.0\ndata = gaussian\nlambda1 = 0.0\nhorizon = 30.0\ndt = 0.05\nrevival_limit = 1e-9\n",
    );
    assert_eq!(lab(&["--config", &cfg, "scatter"]).status.code(), Some(3));
}
