//! The binary's contract: config from stdin or file, fixed tables, exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use piii_tau::cli::{CheckRecord, Output as Doc, TauRecord, TAU_CSV_HEADER};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_piii-tau"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn piii-tau");
    // A rejected command line exits before reading stdin.
    if let Err(e) = child.stdin.take().unwrap().write_all(stdin.as_bytes()) {
        assert_eq!(e.kind(), std::io::ErrorKind::BrokenPipe);
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tau_minimal_config_agrees_across_methods() {
    let o = run(&["tau"], r#"{"sigma": [-0.13, 0], "eta": [0.11, 0], "method": "all"}"#);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), TAU_CSV_HEADER.join(","));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!(lines.next().is_none());
    let (f, m, n) = ((row[2], row[3]), (row[4], row[5]), (row[6], row[7]));
    let d = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).hypot(a.1 - b.1)) / b.0.hypot(b.1);
    assert!(d(f, m) < 1e-8 && d(f, n) < 1e-8 && d(m, n) < 1e-8);
}

#[test]
fn unselected_methods_leave_empty_columns() {
    let o = run(&["tau"], r#"{"method": "maya", "t_grid": {"start": 0.02, "stop": 0.04, "count": 2}}"#);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 12);
    assert!(row[2].is_empty() && row[3].is_empty() && row[6].is_empty());
    assert!(!row[4].is_empty() && !row[8].is_empty());
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn lattice_sigma_exits_with_validation_code() {
    let o = run(&["tau"], r#"{"sigma": [0.5, 0]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma on half-integer lattice"));
}

#[test]
fn malformed_config_exits_with_validation_code() {
    assert_eq!(run(&["tau"], "{not json").status.code(), Some(2));
    assert_eq!(run(&["tau"], r#"{"t_grid": {"start": 0.1, "stop": 0.2, "count": 0}}"#).status.code(), Some(2));
    assert_eq!(run(&["tau"], r#"{"unknown_field": 1}"#).status.code(), Some(2));
    assert_eq!(run(&["bogus"], "{}").status.code(), Some(2));
}

#[test]
fn too_large_stencil_step_is_rejected() {
    let o = run(
        &["tau"],
        r#"{"method": "fredholm", "fd_step": 0.01, "t_grid": {"start": 0.02, "stop": 0.02, "count": 1}}"#,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let cfg = r#"{"t_grid": {"start": 0.01, "stop": 0.1, "count": 4, "spacing": "log"}}"#;
    let a = run(&["tau"], cfg);
    let b = run(&["tau"], cfg);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_round_trips() {
    let o = run(&["tau"], r#"{"format": "json", "t_grid": {"start": 0.0, "stop": 0.1, "count": 3}}"#);
    assert_eq!(o.status.code(), Some(0));
    let doc: Doc<TauRecord> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.schema, 1);
    assert_eq!(doc.command, "tau");
    assert_eq!(doc.records.len(), 3);
    assert_eq!(doc.records[0].tau_fred, Some([1.0, 0.0]));
    assert_eq!(doc.records[0].truncation.n_modes, 12);
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again.as_bytes(), &o.stdout[..]);
}

#[test]
fn check_passes_on_defaults() {
    let o = run(&["check"], r#"{"format": "json"}"#);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: Doc<CheckRecord> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.records.len() >= 10);
    assert!(doc.records.iter().all(|r| r.pass));
}

#[test]
fn series_reproduces_elementary_coefficients() {
    // η = 1/4 at ν = 1/4 is e^{+4√t}.
    let o = run(&["series"], r#"{"sigma": [-0.25, 0], "eta": [0.25, 0], "weight_cutoff": 8, "charge_cutoff": 4}"#);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut fact = 1.0;
    for k in 0..=8 {
        if k > 0 {
            fact *= k as f64;
        }
        let row: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("nekrasov,"))
            .find(|l| l.split(',').nth(3).unwrap().parse::<f64>().unwrap() == k as f64 / 2.0)
            .unwrap()
            .split(',')
            .collect();
        let c: f64 = row[5].parse().unwrap();
        let expected = 4f64.powi(k) / fact;
        assert!((c - expected).abs() < 1e-8 * expected, "k = {k}: {c}");
    }
}

#[test]
fn modes_and_convergence_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("modes.csv");
    let o = run(&["modes", "--output", path.to_str().unwrap()], r#"{"N_modes": 4}"#);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 64);
    let worst = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert!(worst < 1e-10);

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"N_modes": 6, "weight_cutoff": 4}"#).unwrap();
    let o = run(&["convergence", "--config", cfg.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,study,level,value_re,value_im,delta\n"));
    assert_eq!(text.lines().count(), 1 + 6 + 5);
}
