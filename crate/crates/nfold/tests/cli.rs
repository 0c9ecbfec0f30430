use std::process::{Command, Output};

fn nfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfold")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn verify_periodic_passes() {
    let o = nfold(&["verify", "--model", "periodic", "--n", "1..4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn perturbed_prepotential_fails() {
    let o = nfold(&["verify", "--model", "quadratic", "--perturb-w", "q^3", "--n", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&nfold(&["frobnicate"])), 2);
    assert_eq!(code(&nfold(&["verify", "--n", "0"])), 2);
    assert_eq!(code(&nfold(&["isolated", "--g", "0"])), 2);
    assert_eq!(code(&nfold(&["isolated", "--g", "x/y"])), 2);
    assert_eq!(code(&nfold(&["verify", "--n", "2", "--n-range", "1..3"])), 2);
    assert_eq!(code(&nfold(&["verify", "--model", "periodic", "--perturb-w", "q^3"])), 2);
    assert_eq!(code(&nfold(&["--help"])), 0);
}

#[test]
fn nogo_reports_obstruction() {
    let o = nfold(&["nogo", "--n", "6", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = &v["checks"][0]["detail"];
    assert_eq!(d["obstruction"], d["expected_obstruction"]);
    assert!(d["obstruction"].as_str().unwrap().contains("-35"));
}

#[test]
fn isolated_three_fold_roots() {
    let o = nfold(&["isolated", "--model", "periodic", "--n", "3", "--g", "1/2", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let at_g = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "isolated/periodic/N=03/g=1/2").unwrap();
    let energies = at_g["detail"]["energies"].as_array().unwrap();
    assert_eq!(energies.len(), 3);
    assert!(energies.iter().any(|e| (e.as_f64().unwrap() - 0.125).abs() < 1e-12));
}

#[test]
fn mother_small_cases_pass() {
    assert_eq!(code(&nfold(&["mother", "--model", "periodic", "--n", "1..3"])), 0);
}

#[test]
fn json_is_deterministic_and_csv_is_written() {
    let a = nfold(&["nogo", "--n", "1..4", "--json"]);
    let b = nfold(&["nogo", "--n", "1..4", "--json"]);
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("nfold-cli-{}.csv", std::process::id()));
    let o = nfold(&["spectrum", "--model", "periodic", "--n", "2", "--g", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert!(csv.starts_with("model,sign,N,g,boundary,index,E,convergence_estimate"));
    assert!(csv.lines().count() > 2);
}
