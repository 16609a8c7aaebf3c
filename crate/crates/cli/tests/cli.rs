use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl4")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn nsjp_linear_example() {
    let v = json(&["nsjp", "--alpha", "1,0,0", "--kappa", "1"]);
    let terms = v["poly"]["terms"].as_array().unwrap();
    let coef = |e: [u64; 3]| {
        terms
            .iter()
            .find(|t| t["exp"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(e))
            .map(|t| t["coef"].as_str().unwrap().to_string())
    };
    assert_eq!(terms.len(), 3);
    assert_eq!(coef([1, 0, 0]).as_deref(), Some("1"));
    assert_eq!(coef([0, 1, 0]).as_deref(), Some("1/2"));
    assert_eq!(coef([0, 0, 1]).as_deref(), Some("1/2"));
    assert_eq!(v["spectral"], serde_json::json!(["4", "2", "1"]));
}

#[test]
fn spectrum_energies_shift_by_degree() {
    let v = json(&["spectrum", "--max-degree", "4", "--kappa", "1", "--kappa-prime", "1/2"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 70);
    for r in rows {
        let g: u64 = r["gamma"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
        let n = r["n"].as_u64().unwrap();
        assert_eq!(r["energy"].as_str().unwrap(), format!("{}/2", 2 * (g + n) + 17));
    }
}

#[test]
fn invariant_eigenfunction_is_verified() {
    let v = json(&["spectrum", "--lambda", "1,0,0", "--s", "1", "--n", "1", "--kappa", "1/2", "--kappa-prime", "1"]);
    assert_eq!(v["verified"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["basis", "--gamma", "2,0,1", "--n", "1", "--kappa", "1/3", "--kappa-prime", "2"][..],
        &["norm-table", "--max-degree", "3", "--kappa", "1/2", "--format", "csv"],
        &["mc-check", "--gamma", "1,0,0", "--kappa", "0.5", "--kappa-prime", "1", "--samples", "50000", "--seed", "9"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn norm_table_csv_header_and_rows() {
    let out = run(&["norm-table", "--max-degree", "2", "--kappa", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma,n,norm"));
    assert_eq!(lines.count(), 15);
}

#[test]
fn verify_reports_pass() {
    let v = json(&["verify", "--suite", "prop2", "--max-degree", "3", "--kappa", "1/2", "--kappa-prime", "1"]);
    let r = &v.as_array().unwrap()[0];
    assert_eq!(r["suite"], "prop2");
    assert_eq!(r["failures"], 0);
    assert!(r["checked"].as_u64().unwrap() > 0);
}

#[test]
fn mc_check_reports_exact_value() {
    let v = json(&["mc-check", "--kappa", "0.5", "--kappa-prime", "1", "--samples", "200000", "--seed", "3"]);
    assert_eq!(v["exact"], "1");
    for key in ["integrand", "kappa", "kappa_prime", "samples", "seed", "estimate", "stderr"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nsjp", "--alpha", "1,x"][..],
        &["nsjp", "--alpha", "1,0", "--kappa", "1/0"],
        &["nsjp", "--alpha", "1,0", "--kappa=-1"],
        &["basis", "--gamma", "1,0"],
        &["basis"],
        &["verify", "--suite", "nonsense"],
        &["spectrum", "--lambda", "0,1,0"],
        &["mc-check", "--kappa", "abc"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
