// SPDX-License-Identifier: Apache-2.0

use boolspar::harness::{run, Experiment, ExperimentConfig, Format, Status};
use serde_json::Value;

fn config(e: Experiment, trials: usize) -> ExperimentConfig {
    ExperimentConfig::new(e, trials, 1)
}

fn metric(r: &boolspar::harness::Report, name: &str) -> f64 {
    r.checks.iter().find(|c| c.metric == name).unwrap_or_else(|| panic!("no {name}")).value
}

#[test]
fn measure_and5() {
    let out = run(&config(Experiment::Measure { function: "and:5".into() }, 1)).unwrap();
    assert_eq!((metric(&out.report, "deg"), metric(&out.report, "spar"), metric(&out.report, "l1")), (5.0, 1.0, 1.0));
}

#[test]
fn maxdeg_parity8_passes() {
    let e = Experiment::Maxdeg { function: "parity:8".into(), monomials: vec!["full".into()] };
    let out = run(&config(e, 10_000)).unwrap();
    assert_eq!(out.report.status(), Status::Pass);
}

#[test]
fn statistical_checks_record_everything() {
    let e = Experiment::Maxsens { function: "majority:5".into(), set: "minterms".into(), monomials: vec!["alt".into()] };
    let out = run(&config(e, 2000)).unwrap();
    let stats: Vec<_> = out.report.checks.iter().filter(|c| c.metric == "tail").collect();
    assert_eq!(stats.len(), 5);
    for c in stats {
        assert!(c.bound.is_some() && c.slack.is_some() && c.trials == Some(2000));
    }
}

#[test]
fn replay_is_identical_modulo_wall_time() {
    let e = Experiment::Maxsens { function: "thr:8".into(), set: "maxterms".into(), monomials: vec!["full".into()] };
    let mut a = run(&config(e.clone(), 3000)).unwrap().report;
    let mut b = run(&config(e, 3000)).unwrap().report;
    a.wall_time_ms = 0;
    b.wall_time_ms = 0;
    assert_eq!(a.render(Format::Json), b.render(Format::Json));
}

#[test]
fn scaling_columns() {
    let e = Experiment::CompareScaling { family: "or".into(), ns: vec![4, 8, 12, 16] };
    let out = run(&config(e, 50)).unwrap();
    assert_eq!(out.report.status(), Status::Pass);
    let rows = out.report.details["rows"].as_array().unwrap().clone();
    for (row, n) in rows.iter().zip([4, 8, 12, 16]) {
        let want = ((1u64 << n) - 1) as f64;
        assert_eq!(row["log2_spar"].as_f64().unwrap(), want.log2());
    }

    let e = Experiment::CompareScaling { family: "thr".into(), ns: vec![4, 6, 8] };
    let out = run(&config(e, 50)).unwrap();
    let spar: Vec<f64> = out.report.checks.iter().filter(|c| c.metric == "spar").map(|c| c.value).collect();
    assert_eq!(spar, vec![5.0, 7.0, 9.0]);

    // Exact sparsity of AND_k ∘ OR_2 is 3^k: each OR_2 block contributes
    // x + y − xy, and the blocks multiply.
    let e = Experiment::CompareScaling { family: "and-or2".into(), ns: vec![2, 4, 6] };
    let out = run(&config(e, 50)).unwrap();
    let spar: Vec<f64> = out.report.checks.iter().filter(|c| c.metric == "spar").map(|c| c.value).collect();
    assert_eq!(spar, vec![9.0, 81.0, 729.0]);
}

#[test]
fn selftest_passes() {
    let out = run(&config(Experiment::Selftest, 1)).unwrap();
    assert_eq!(out.report.status(), Status::Pass);
}

#[test]
fn unknown_function_is_an_error() {
    assert!(run(&config(Experiment::Measure { function: "nope:3".into() }, 1)).is_err());
    assert!(run(&config(Experiment::Measure { function: "or:3".into() }, 0)).is_err());
}

#[test]
fn config_is_echoed() {
    let out = run(&config(Experiment::Mbs { function: "or:6".into() }, 7)).unwrap();
    let c = &out.report.config;
    assert_eq!(c["trials"], Value::from(7));
    assert_eq!(c["seed"], Value::from(1));
    assert_eq!(c["experiment"]["kind"], Value::from("mbs"));
    assert_eq!(metric(&out.report, "mbs"), 6.0);
}
