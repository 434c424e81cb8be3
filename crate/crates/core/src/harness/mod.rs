// SPDX-License-Identifier: Apache-2.0

//! Batch experiments shared by the command-line tool and the test suites.

mod report;
mod scaling;
mod selftest;

use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub use report::{Check, CheckKind, Report, Status, CSV_HEADER, SCHEMA_VERSION};
pub use scaling::compare_scaling;
pub use selftest::selftest;

use crate::approx;
use crate::bits::{full_mask, ones};
use crate::boolfun::{critical_inputs, mbs, mbs_greedy, sensitivity, NamedFunction, MBS_EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::genpoly::GenMonomial;
use crate::io;
use crate::maxdeg::{self, PanelMonomial};
use crate::maxsens::{self, GenPanelMonomial};
use crate::poly::mobius_from_table;
use crate::stats::trial_seed;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    Measure { function: String },
    Maxdeg { function: String, monomials: Vec<String> },
    Maxsens { function: String, set: String, monomials: Vec<String> },
    ApproxOr { n: usize },
    ApproxThr { n: usize, t: Option<usize> },
    ApproxSparsify { input: PathBuf, k: usize },
    ApproxAmplify { input: PathBuf, iters: usize, margin: f64 },
    Mbs { function: String },
    Convert { input: PathBuf },
    CompareScaling { family: String, ns: Vec<usize> },
    Selftest,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Measure { .. } => "measure",
            Experiment::Maxdeg { .. } => "maxdeg",
            Experiment::Maxsens { .. } => "maxsens",
            Experiment::ApproxOr { .. } => "approx-or",
            Experiment::ApproxThr { .. } => "approx-thr",
            Experiment::ApproxSparsify { .. } => "approx-sparsify",
            Experiment::ApproxAmplify { .. } => "approx-amplify",
            Experiment::Mbs { .. } => "mbs",
            Experiment::Convert { .. } => "convert",
            Experiment::CompareScaling { .. } => "compare-scaling",
            Experiment::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything that determines a report. Output path and worker count are
/// absent: they never change the content.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, trials: usize, seed: u64) -> Self {
        ExperimentConfig { experiment, trials, seed, format: Format::Json }
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// A report plus an optional artifact (a polynomial or generalized
/// polynomial in its JSON file format).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub artifact: Option<Value>,
}

/// Runs one experiment. `Err` means the configuration or an input file was invalid.
pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let echo = serde_json::to_value(config).unwrap_or(Value::Null);
    let mut report = Report::new(config.experiment.name(), echo);
    let artifact = match &config.experiment {
        Experiment::Measure { function } => measure(&mut report, function)?,
        Experiment::Maxdeg { function, monomials } => run_maxdeg(&mut report, function, monomials, config)?,
        Experiment::Maxsens { function, set, monomials } => run_maxsens(&mut report, function, set, monomials, config)?,
        Experiment::ApproxOr { n } => approx_or(&mut report, *n)?,
        Experiment::ApproxThr { n, t } => approx_thr(&mut report, *n, *t, config.seed)?,
        Experiment::ApproxSparsify { input, k } => approx_sparsify(&mut report, input, *k, config.seed)?,
        Experiment::ApproxAmplify { input, iters, margin } => approx_amplify(&mut report, input, *iters, *margin)?,
        Experiment::Mbs { function } => run_mbs(&mut report, function)?,
        Experiment::Convert { input } => convert(&mut report, input)?,
        Experiment::CompareScaling { family, ns } => {
            compare_scaling(&mut report, family, ns, config.trials, config.seed)?;
            None
        }
        Experiment::Selftest => {
            selftest(&mut report, config.seed)?;
            None
        }
    };
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report, artifact })
}

/// Parses monomial panel entries. Keywords: `full` (all variables),
/// `half` (the first ⌈n/2⌉), `alt` (odd variables positive, even ones
/// negated), `neg` (all negated). Otherwise a `.`-separated list of 1-based
/// indices, negative for a negated literal, e.g. `1.2.-3.-4`.
pub fn parse_panel(specs: &[String], n: usize) -> Result<Vec<(String, u32, u32)>> {
    let full = full_mask(n);
    specs
        .iter()
        .map(|s| {
            let (pos, neg) = match s.as_str() {
                "full" => (full, 0),
                "half" => (full_mask(n.div_ceil(2)), 0),
                "alt" => {
                    let odd = (0..n).filter(|i| i % 2 == 0).fold(0, |m, i| m | 1 << i);
                    (odd, full & !odd)
                }
                "neg" => (0, full),
                _ => {
                    let (mut pos, mut neg) = (0u32, 0u32);
                    for tok in s.split('.') {
                        let v: i64 = tok.parse().map_err(|_| Error::Parse(format!("bad monomial `{s}`")))?;
                        let i = v.unsigned_abs() as usize;
                        if i == 0 || i > n {
                            return Err(Error::VariableOutOfRange { index: i, n });
                        }
                        if v > 0 {
                            pos |= 1 << (i - 1);
                        } else {
                            neg |= 1 << (i - 1);
                        }
                    }
                    if pos & neg != 0 {
                        return Err(Error::OverlappingLiterals { pos, neg });
                    }
                    (pos, neg)
                }
            };
            Ok((s.clone(), pos, neg))
        })
        .collect()
}

fn measure(report: &mut Report, function: &str) -> Result<Option<Value>> {
    let f = NamedFunction::parse(function)?;
    let p = mobius_from_table(&f.table);
    let m = p.measures();
    let param = format!("fn={function}");
    report.push(Check::info("deg", &param, m.deg as f64));
    report.push(Check::info("spar", &param, m.spar as f64));
    report.push(Check::info("l1", &param, m.l1));
    report.push(Check::info("sensitivity", &param, sensitivity(&f.table) as f64));
    report.detail("measures", m);
    if let Some(g) = f.spec.genpoly() {
        let gm = g.measures();
        let exact = g.max_error(&f.table)?;
        report.push(Check::assertion("genpoly_max_error", &param, exact, Some(0.0), exact == 0.0));
        report.push(Check::info("gspar_ub", &param, gm.gspar_ub as f64));
        report.push(Check::info("gl1_ub", &param, gm.gl1_ub));
        report.detail("gen_measures", gm);
    }
    Ok(Some(serde_json::to_value(io::poly_to_json(&p)?)?))
}

fn run_maxdeg(report: &mut Report, function: &str, monomials: &[String], config: &ExperimentConfig) -> Result<Option<Value>> {
    let f = NamedFunction::parse(function)?;
    let panel: Vec<PanelMonomial> = parse_panel(monomials, f.n())?
        .into_iter()
        .map(|(label, pos, neg)| {
            if neg != 0 {
                Err(Error::InvalidParameter(format!("monomial `{label}` has negated literals")))
            } else {
                Ok(PanelMonomial { label, vars: pos })
            }
        })
        .collect::<Result<_>>()?;
    let rep = maxdeg::verify_max_degree_distribution(&f.table, config.trials, config.seed, &panel, None)?;
    let param = format!("fn={function}");
    report.push(Check::zero_count("degree_mismatch_runs", &param, rep.failures.degree));
    report.push(Check::zero_count("zero_restriction_runs", &param, rep.failures.zero));
    report.push(Check::zero_count("balance_violations", &param, rep.failures.balance));
    report.push(Check::zero_count("active_bound_violations", &param, rep.failures.active));
    report.push(Check::zero_count("sampler_errors", &param, rep.failures.other));
    report.push(Check::assertion("min_active", &param, rep.min_active as f64, Some(rep.active_bound), rep.min_active as f64 >= rep.active_bound));
    for c in &rep.tails {
        report.push(Check::statistical("tail", format!("M={},t={}", c.monomial, c.t), c.empirical, c.bound, c.slack, c.trials));
    }
    report.detail("l1", rep.l1);
    report.detail("free_hist", &rep.free_hist);
    report.detail("active_hist", &rep.active_hist);
    Ok(None)
}

fn input_set(choice: &str, f: &NamedFunction) -> Result<Vec<u32>> {
    if let Some(path) = choice.strip_prefix("file:") {
        return io::read_input_set_file(path.as_ref(), f.n());
    }
    let c = critical_inputs(&f.table)?;
    match choice {
        "minterms" => Ok(c.m1),
        "maxterms" => Ok(c.m0),
        "both" => Ok(c.both()),
        _ => Err(Error::InvalidParameter(format!("unknown input set `{choice}`"))),
    }
}

fn run_maxsens(
    report: &mut Report,
    function: &str,
    set: &str,
    monomials: &[String],
    config: &ExperimentConfig,
) -> Result<Option<Value>> {
    let f = NamedFunction::parse(function)?;
    let inputs = input_set(set, &f)?;
    let panel: Vec<GenPanelMonomial> = parse_panel(monomials, f.n())?
        .into_iter()
        .map(|(label, pos, neg)| Ok(GenPanelMonomial { label, monomial: GenMonomial::new(pos, neg, 1.0)? }))
        .collect::<Result<_>>()?;
    let rep = maxsens::verify_max_sens_distribution(&f.table, &inputs, config.trials, config.seed, &panel, None)?;
    let param = format!("fn={function},set={set}");
    report.push(Check::zero_count("witness_failures", &param, rep.failures.witness));
    report.push(Check::zero_count("sensitivity_mismatch_runs", &param, rep.failures.sensitivity));
    report.push(Check::zero_count("quota_misses", &param, rep.failures.quota));
    report.push(Check::zero_count("active_bound_violations", &param, rep.failures.active));
    report.push(Check::zero_count("sampler_errors", &param, rep.failures.other));
    report.push(Check::assertion("min_active", &param, rep.min_active as f64, Some(rep.active_bound), rep.min_active as f64 >= rep.active_bound));
    for c in &rep.tails {
        report.push(Check::statistical("tail", format!("M={},t={}", c.monomial, c.t), c.empirical, c.bound, c.slack, c.trials));
    }
    report.push(Check::info("mean_active", &param, rep.mean_active));
    report.push(Check::info("mean_free", &param, rep.mean_free));
    report.detail("set_size", rep.set_size);
    report.detail("free_hist", &rep.free_hist);
    report.detail("active_hist", &rep.active_hist);
    Ok(None)
}

fn approx_or(report: &mut Report, n: usize) -> Result<Option<Value>> {
    let q = approx::chebyshev_or_approximator(n)?;
    let d = approx::chebyshev_degree(n);
    let err = q.max_level_error(|j| if j == 0 { 0.0 } else { 1.0 });
    let param = format!("n={n}");
    report.push(Check::assertion("max_error", &param, err, Some(1.0 / 3.0 - 1e-6), err <= 1.0 / 3.0 - 1e-6));
    report.push(Check::assertion("coeff_bound_3^d", format!("d={d}"), d as f64, None, approx::coefficient_bound_holds(d)));
    report.push(Check::info("deg", &param, q.degree() as f64));
    report.push(Check::info("spar", &param, q.sparsity() as f64));
    report.push(Check::info("l1", &param, q.l1()));
    report.detail("level_coeffs", &q.level_coeffs);
    report.detail("level_values", &q.level_values);
    if n <= crate::MAX_VARS {
        Ok(Some(serde_json::to_value(io::poly_to_json(&q.to_multilinear()?)?)?))
    } else {
        Ok(None)
    }
}

fn approx_thr(report: &mut Report, n: usize, t: Option<usize>, seed: u64) -> Result<Option<Value>> {
    let t = t.unwrap_or_else(|| approx::default_collection_size(n));
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 0));
    let a = approx::thr_approximator(n, t, approx::DEFAULT_SAMPLING_BUDGET, &mut rng)?;
    let check = approx::verify_thr_approximator(&a)?;
    let param = format!("n={n},t={t}");
    report.push(Check::assertion("two_thirds_separating", &param, a.collection.delta, Some(2.0 / 3.0), a.collection.is_two_thirds_separating()));
    report.push(Check::assertion("ones_exact", &param, check.ones_exact as u8 as f64, Some(1.0), check.ones_exact));
    report.push(Check::assertion("max_zero_value", &param, check.max_zero_value, Some(1.0 / 3.0), check.zeros_within_third));
    let spar = a.poly.sparsity();
    report.push(Check::assertion("spar", &param, spar as f64, Some(9.0 * t as f64), spar <= 9 * t));
    report.push(Check::info("l1", &param, a.poly.l1()));
    report.push(Check::info("attempts", &param, a.attempts as f64));
    report.detail("pairs", a.collection.pairs.iter().map(|&(s1, s2)| (mask_vars(s1), mask_vars(s2))).collect::<Vec<_>>());
    Ok(Some(serde_json::to_value(io::poly_to_json(&a.poly)?)?))
}

fn mask_vars(m: u32) -> Vec<usize> {
    ones(m).map(|i| i + 1).collect()
}

fn approx_sparsify(report: &mut Report, input: &std::path::Path, k: usize, seed: u64) -> Result<Option<Value>> {
    let p = io::read_poly_file(input)?.to_real();
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 0));
    let s = approx::sparsify_by_sampling(&p, k, &mut rng)?;
    let (a, b) = (p.to_table()?, s.to_table()?);
    let dev = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let param = format!("k={k}");
    report.push(Check::assertion("spar", &param, s.sparsity() as f64, Some(k as f64), s.sparsity() <= k));
    report.push(Check::info("max_deviation", &param, dev));
    report.push(Check::info("predicted_deviation", &param, approx::predicted_deviation(p.l1(), p.n(), k)));
    report.push(Check::info("l1_in", &param, p.l1()));
    Ok(Some(serde_json::to_value(io::poly_to_json(&s)?)?))
}

fn approx_amplify(report: &mut Report, input: &std::path::Path, iters: usize, margin: f64) -> Result<Option<Value>> {
    let p = io::read_poly_file(input)?.to_real();
    let a = approx::amplify_with_margin(&p, iters, margin)?;
    let (before, after) = (p.to_table()?, a.to_table()?);
    let mut rounding_kept = true;
    let mut dist = 0.0f64;
    for (x, y) in before.values().iter().zip(after.values()) {
        rounding_kept &= (*x > 0.5) == (*y > 0.5);
        dist = dist.max(y.abs().min((y - 1.0).abs()));
    }
    let param = format!("iters={iters},margin={margin}");
    report.push(Check::assertion("rounding_preserved", &param, rounding_kept as u8 as f64, Some(1.0), rounding_kept));
    report.push(Check::info("max_distance_to_boolean", &param, dist));
    report.push(Check::info("deg", &param, a.degree() as f64));
    report.push(Check::info("spar", &param, a.sparsity() as f64));
    Ok(Some(serde_json::to_value(io::poly_to_json(&a)?)?))
}

fn run_mbs(report: &mut Report, function: &str) -> Result<Option<Value>> {
    let f = NamedFunction::parse(function)?;
    let param = format!("fn={function}");
    if f.n() <= MBS_EXACT_LIMIT {
        report.push(Check::info("mbs", &param, mbs(&f.table)? as f64));
        report.detail("mode", "exact");
    } else {
        report.push(Check::info("mbs_lower_bound", &param, mbs_greedy(&f.table) as f64));
        report.detail("mode", "greedy-lower-bound");
    }
    Ok(None)
}

fn convert(report: &mut Report, input: &std::path::Path) -> Result<Option<Value>> {
    let t = io::read_tree_file(input)?;
    let g = t.to_genpoly();
    let gm = g.measures();
    let table = t.to_table()?;
    let err = g.max_error(&table)?;
    let (size, depth) = (t.size(), t.depth());
    report.push(Check::assertion("max_error", "", err, Some(0.0), err == 0.0));
    report.push(Check::assertion("gspar_ub", "", gm.gspar_ub as f64, Some(size as f64), gm.gspar_ub <= size));
    report.push(Check::assertion("gl1_ub", "", gm.gl1_ub, Some(size as f64), gm.gl1_ub <= size as f64));
    report.push(Check::assertion("deg", "", gm.deg as f64, Some(depth as f64), gm.deg <= depth));
    report.detail("size", size);
    report.detail("depth", depth);
    Ok(Some(json!(io::genpoly_to_json(&g))))
}
