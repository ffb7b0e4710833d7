use std::process::{Command, Output};

use eslab_cli::record::OutputRecord;
use serde_json::Value;

fn es_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_es-lab"))
        .args(args)
        .env_remove("ES_LAB_CACHE")
        .output()
        .expect("spawn es-lab")
}

fn records(out: &Output) -> Vec<OutputRecord> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn ghat_exact_example() {
    let out = es_lab(&["ghat", "--k", "5", "--exact"]);
    assert!(out.status.success());
    let r = &records(&out)[0];
    assert_eq!(r.command, "ghat");
    assert_eq!(r.results["numerator"], "45");
    assert_eq!(r.results["denominator"], "2");
    let lg = r.results["log_ghat"].as_f64().unwrap();
    assert!((lg - 22.5f64.ln()).abs() < 1e-14);
}

#[test]
fn search_example() {
    let out = es_lab(&["search", "--k", "5"]);
    assert!(out.status.success());
    let r = &records(&out)[0];
    assert_eq!(r.results["g"], 23);
    assert_eq!(r.results["certificate_ok"], true);
    assert_eq!(r.results["certificate"], "2:1.0.1<=1.0.1.1.1;3:1.2<=2.1.2;5:1.0<=4.3");
}

#[test]
fn constant_example() {
    let out = es_lab(&["constant", "--tol", "5e-8"]);
    assert!(out.status.success());
    let r = &records(&out)[0];
    let lo = r.results["lower"].as_f64().unwrap();
    let hi = r.results["upper"].as_f64().unwrap();
    let v = r.results["value_f64"].as_f64().unwrap();
    assert!(hi - lo <= 5e-8 && lo <= v && v <= hi);
    assert!(lo <= 0.788530565911509 && 0.788530565911509 <= hi);
}

#[test]
fn exit_codes() {
    assert_eq!(es_lab(&["psi", "--x", "10"]).status.code(), Some(0));
    // search bound too small: recoverable
    let out = es_lab(&["search", "--k", "5", "--bound", "22"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(es_lab(&["constant", "--tol", "1e-24"]).status.code(), Some(1));
    // usage and domain errors
    assert_eq!(es_lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(es_lab(&["ghat", "--k", "1"]).status.code(), Some(2));
    assert_eq!(es_lab(&["ghat", "--k", "200000", "--exact"]).status.code(), Some(2));
    assert_eq!(es_lab(&["ghat", "--k", "5", "--exact", "--log"]).status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    for args in [
        &["ghat", "--k", "376", "--decompose"][..],
        &["ratio", "--k", "10"],
        &["pieces", "--k", "1000"],
        &["mertens", "--x", "1000"],
        &["fixtures"],
    ] {
        let out = es_lab(args);
        assert!(out.status.success(), "{args:?}");
        for line in String::from_utf8_lossy(&out.stdout).lines() {
            let rec: OutputRecord = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&rec).unwrap(), line);
        }
    }
}

#[test]
fn csv_matches_json() {
    let args = ["converge", "--kmin", "100", "--kmax", "10000", "--points", "4"];
    let json = records(&es_lab(&args));
    let mut csv_args = vec!["--csv"];
    csv_args.extend(args);
    let out = es_lab(&csv_args);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), json.len());
    for (row, rec) in rows.iter().zip(&json) {
        for (name, cell) in header.iter().zip(row.iter()) {
            if let Some(key) = name.strip_prefix("results.") {
                let v = &rec.results[key];
                let text = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(cell, text, "{key}");
                if let Some(x) = v.as_f64() {
                    assert_eq!(cell.parse::<f64>().unwrap().to_bits(), x.to_bits());
                }
            }
        }
    }
}

#[test]
fn cache_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();

    let first = es_lab(&["--cache", p, "ratio", "--k", "100"]);
    assert!(first.status.success());
    let second = es_lab(&["--cache", p, "ratio", "--k", "100"]);
    assert_eq!(records(&first), records(&second), "cache hit replays the stored record");
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 1);

    let via_env = Command::new(env!("CARGO_BIN_EXE_es-lab"))
        .args(["ratio", "--k", "100"])
        .env("ES_LAB_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(records(&via_env), records(&first));

    // A different key is computed and appended.
    assert!(es_lab(&["--cache", p, "ratio", "--k", "106"]).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
}

#[test]
fn workers_do_not_change_results() {
    let strip = |out: Output| -> Vec<(Value, Value)> {
        records(&out).into_iter().map(|r| (Value::Object(r.parameters), Value::Object(r.results))).collect()
    };
    let base = strip(es_lab(&["search", "--k", "23", "--workers", "1"]));
    for w in ["2", "4"] {
        assert_eq!(strip(es_lab(&["search", "--k", "23", "--workers", w])), base);
    }
    let conv = strip(es_lab(&["converge", "--kmin", "1000", "--kmax", "100000", "--workers", "1"]));
    assert_eq!(strip(es_lab(&["converge", "--kmin", "1000", "--kmax", "100000", "--workers", "3"])), conv);
}
