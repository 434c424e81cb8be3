// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "schema_version,experiment,metric,param,value,bound,slack,pass";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Must hold on every run or exactly.
    Assertion,
    /// Empirical value compared against a bound plus slack.
    Statistical,
    /// Reported only.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub metric: String,
    pub param: String,
    pub kind: CheckKind,
    pub value: f64,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub trials: Option<usize>,
    pub pass: bool,
}

impl Check {
    pub fn assertion(metric: &str, param: impl Into<String>, value: f64, bound: Option<f64>, pass: bool) -> Self {
        Check { metric: metric.into(), param: param.into(), kind: CheckKind::Assertion, value, bound, slack: None, trials: None, pass }
    }

    /// Passes when `value == 0`; used for failure counters.
    pub fn zero_count(metric: &str, param: impl Into<String>, count: usize) -> Self {
        Self::assertion(metric, param, count as f64, Some(0.0), count == 0)
    }

    pub fn statistical(metric: &str, param: impl Into<String>, value: f64, bound: f64, slack: f64, trials: usize) -> Self {
        Check {
            metric: metric.into(),
            param: param.into(),
            kind: CheckKind::Statistical,
            value,
            bound: Some(bound),
            slack: Some(slack),
            trials: Some(trials),
            pass: value <= bound + slack,
        }
    }

    pub fn info(metric: &str, param: impl Into<String>, value: f64) -> Self {
        Check { metric: metric.into(), param: param.into(), kind: CheckKind::Info, value, bound: None, slack: None, trials: None, pass: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    AssertionFailure,
    StatisticalFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::AssertionFailure => 2,
            Status::StatisticalFailure => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub experiment: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub details: Value,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(experiment: &str, config: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.into(),
            config,
            checks: Vec::new(),
            details: Value::Object(Default::default()),
            wall_time_ms: 0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).unwrap_or(Value::Null);
        if let Value::Object(m) = &mut self.details {
            m.insert(key.into(), v);
        }
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| !c.pass && c.kind == CheckKind::Assertion) {
            Status::AssertionFailure
        } else if self.checks.iter().any(|c| !c.pass) {
            Status::StatisticalFailure
        } else {
            Status::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                self.schema_version,
                csv_field(&self.experiment),
                csv_field(&c.metric),
                csv_field(&c.param),
                c.value,
                opt(c.bound),
                opt(c.slack),
                c.pass
            );
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
