// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use serde_json::Value;

fn boolspar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolspar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

fn metric(v: &Value, name: &str) -> f64 {
    v["checks"].as_array().unwrap().iter().find(|c| c["metric"] == name).unwrap()["value"].as_f64().unwrap()
}

#[test]
fn measure_thr8() {
    let out = boolspar(&["measure", "--fn", "thr:8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((metric(&v, "deg"), metric(&v, "spar"), metric(&v, "l1")), (8.0, 9.0, 15.0));
}

#[test]
fn replay_is_byte_identical_modulo_wall_time() {
    let args = ["maxdeg", "--fn", "majority:7", "--trials", "3000", "--seed", "5", "--monomials", "full,half"];
    let a = boolspar(&args);
    let b = boolspar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_wall_time(json(&a)), without_wall_time(json(&b)));
    // The serialized text differs at most on the wall-time line.
    let strip = |o: &Output| String::from_utf8_lossy(&o.stdout).lines().filter(|l| !l.contains("wall_time_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn thread_count_does_not_change_the_report() {
    let base = ["maxsens", "--fn", "majority:5", "--set", "minterms", "--trials", "4000", "--seed", "3", "--format", "csv"];
    let one = boolspar(&[&base[..], &["--threads", "1"]].concat());
    let four = boolspar(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_header_is_versioned() {
    let out = boolspar(&["mbs", "--fn", "or:5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "schema_version,experiment,metric,param,value,bound,slack,pass");
    assert!(text.lines().any(|l| l == "1,mbs,mbs,fn=or:5,5,,,true"));
}

#[test]
fn input_errors_exit_4() {
    assert_eq!(boolspar(&["measure", "--fn", "bogus:3"]).status.code(), Some(4));
    assert_eq!(boolspar(&["measure", "--fn", "or:3", "--trials", "0"]).status.code(), Some(4));
    assert_eq!(boolspar(&["measure", "--fn", "file:/nonexistent/table.txt"]).status.code(), Some(4));
    assert_eq!(boolspar(&["measure"]).status.code(), Some(4));
    assert_eq!(boolspar(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_separating_set_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    // Neither input of AND_3 has a sensitive coordinate.
    std::fs::write(&set, "000\n100\n").unwrap();
    let spec = format!("file:{}", set.display());
    let out = boolspar(&["maxsens", "--fn", "and:3", "--set", &spec, "--trials", "10"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn out_file_and_emitted_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let poly = dir.path().join("p.json");
    let out = boolspar(&["approx", "thr", "--n", "8", "--out", report.to_str().unwrap(), "--emit", poly.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["experiment"], "approx-thr");

    // Feed the emitted approximator back through sparsify and amplify.
    let p = poly.to_str().unwrap();
    let s = boolspar(&["approx", "sparsify", "--in", p, "--k", "200"]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
    let a = boolspar(&["approx", "amplify", "--in", p, "--iters", "6"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(metric(&json(&a), "max_distance_to_boolean") < 0.01);
}

#[test]
fn convert_tree_file() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.json");
    // x1 ? (x2 ? 1 : 0) : 0, variables 1-based.
    std::fs::write(
        &tree,
        r#"{"n": 2, "root": 0, "nodes": [{"var": 1, "lo": 1, "hi": 2}, {"leaf": 0}, {"var": 2, "lo": 3, "hi": 4}, {"leaf": 0}, {"leaf": 1}]}"#,
    )
    .unwrap();
    let out = boolspar(&["convert", "--in", tree.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(metric(&json(&out), "max_error"), 0.0);
}

#[test]
fn selftest_and_scaling() {
    assert_eq!(boolspar(&["selftest"]).status.code(), Some(0));
    let out = boolspar(&["compare-scaling", "--family", "thr", "--ns", "4,6,8", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["details"]["rows"].as_array().unwrap().len(), 3);
}
