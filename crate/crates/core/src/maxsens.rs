// SPDX-License-Identifier: Apache-2.0

//! Adaptive restriction sampler driven by separating-set shrinkage.
//!
//! Members of `F` are kept as full inputs and `f` as the ambient table. A
//! member consistent with the current restriction projects to the current
//! variables, and its sensitive set under the restricted function is its
//! ambient sensitive set intersected with those variables, so no table is
//! ever rebuilt.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{full_mask, ones};
use crate::boolfun::{find_violation, sensitive_set, sensitivity};
use crate::error::{Error, Result};
use crate::genpoly::GenMonomial;
use crate::maxdeg::{Action, Step, StepKind};
use crate::restriction::{Assign, Restriction};
use crate::stats::{bonferroni_slack, histogram, run_trials, tail_cells, TailCell};
use crate::table::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxSensParams {
    pub ambient_n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SensTrace {
    pub steps: Vec<Step>,
    pub active_count: usize,
    pub free_count: usize,
    /// Member of `F` agreeing with `ρ` on every set variable and sensitive
    /// at every free one.
    pub witness: u32,
}

/// Samples a restriction of `v` for `f` using the separating set `set`.
pub fn max_sensitivity_restriction<R: Rng + ?Sized>(
    v: u32,
    f: &TruthTable,
    set: &[u32],
    ambient_n: usize,
    rng: &mut R,
) -> Result<(Restriction, SensTrace)> {
    if ambient_n < 2 {
        return Err(Error::AmbientTooSmall(ambient_n));
    }
    if set.is_empty() {
        return Err(Error::EmptyInputSet);
    }
    let n = f.n();
    let mut seen = HashSet::with_capacity(set.len());
    for &w in set {
        if w & !full_mask(n) != 0 {
            return Err(Error::VariableOutOfRange { index: 31 - w.leading_zeros() as usize, n });
        }
        if !seen.insert(w & v) {
            return Err(Error::DuplicateInput(w));
        }
    }
    let sens: Vec<u32> = set.iter().map(|&w| sensitive_set(f, w)).collect();
    let mut rho = Restriction::free(n, v)?;
    let mut trace = SensTrace::default();
    let mut cur: Vec<usize> = (0..set.len()).collect();
    let mut v = v;
    let big_n = ambient_n as u64;
    loop {
        let size = cur.len();
        if size <= 2 {
            let &k = cur.iter().min_by_key(|&&k| set[k]).expect("nonempty");
            let w = set[k];
            for i in ones(v) {
                let action = if w >> i & 1 == 1 { Action::Set1 } else { Action::Set0 };
                rho.set(i, if w >> i & 1 == 1 { Assign::One } else { Assign::Zero })?;
                trace.steps.push(Step { kind: StepKind::Terminal, var: i, action, before: size as f64, after: 1.0 });
            }
            trace.witness = w;
            break;
        }
        let passive = ones(v).flat_map(|i| [(i, 0u32), (i, 1u32)]).find_map(|(i, u)| {
            let c = cur.iter().filter(|&&k| set[k] >> i & 1 == u).count() as u64;
            (big_n * c >= (big_n - 1) * size as u64).then_some((i, u))
        });
        if let Some((i, u)) = passive {
            cur.retain(|&k| set[k] >> i & 1 == u);
            v &= !(1 << i);
            let action = if u == 1 { Action::Set1 } else { Action::Set0 };
            rho.set(i, if u == 1 { Assign::One } else { Assign::Zero })?;
            trace.steps.push(Step { kind: StepKind::Passive, var: i, action, before: size as f64, after: cur.len() as f64 });
            continue;
        }
        let mut best = (usize::MAX, 0u32, 0usize);
        for i in ones(v) {
            for u in [0u32, 1] {
                let c = cur.iter().filter(|&&k| sens[k] >> i & 1 == 1 && set[k] >> i & 1 == u).count();
                if best.0 == usize::MAX || c > best.2 {
                    best = (i, u, c);
                }
            }
        }
        let (i, u, count) = best;
        if best.0 == usize::MAX || (4 * big_n * count as u64) < size as u64 {
            return Err(Error::QuotaMissed { count, set_size: size, n: ambient_n });
        }
        let action = match rng.gen_range(0..3) {
            0 => Action::Set0,
            1 => Action::Set1,
            _ => Action::Free,
        };
        match action {
            Action::Set0 => cur.retain(|&k| set[k] >> i & 1 == 0),
            Action::Set1 => cur.retain(|&k| set[k] >> i & 1 == 1),
            Action::Free => cur.retain(|&k| sens[k] >> i & 1 == 1 && set[k] >> i & 1 == u),
        }
        v &= !(1 << i);
        rho.set(
            i,
            match action {
                Action::Set0 => Assign::Zero,
                Action::Set1 => Assign::One,
                Action::Free => Assign::Star,
            },
        )?;
        trace.active_count += 1;
        trace.steps.push(Step { kind: StepKind::Active, var: i, action, before: size as f64, after: cur.len() as f64 });
    }
    trace.free_count = rho.free_count();
    Ok((rho, trace))
}

pub fn max_sensitivity_restriction_seeded(
    v: u32,
    f: &TruthTable,
    set: &[u32],
    params: MaxSensParams,
) -> Result<(Restriction, SensTrace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    max_sensitivity_restriction(v, f, set, params.ambient_n, &mut rng)
}

/// Checks the witness of one run: it belongs to `set`, agrees with `ρ` on
/// the set variables and is sensitive at every free variable.
pub fn witness_valid(f: &TruthTable, set: &[u32], rho: &Restriction, w: u32) -> bool {
    set.contains(&w) && rho.is_consistent(w) && rho.free_vars() & !sensitive_set(f, w) == 0
}

/// `log(|F|/20) / log(4n)`.
pub fn active_lower_bound(set_size: usize, n: usize) -> f64 {
    (set_size as f64 / 20.0).ln() / (4.0 * n as f64).ln()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MaxSensFailures {
    pub witness: usize,
    pub sensitivity: usize,
    pub quota: usize,
    pub active: usize,
    pub other: usize,
}

impl MaxSensFailures {
    pub fn total(&self) -> usize {
        self.witness + self.sensitivity + self.quota + self.active + self.other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxSensReport {
    pub n: usize,
    pub set_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub active_bound: f64,
    pub failures: MaxSensFailures,
    pub min_active: usize,
    pub mean_active: f64,
    pub mean_free: f64,
    pub free_hist: Vec<usize>,
    pub active_hist: Vec<usize>,
    pub tails: Vec<TailCell>,
}

impl MaxSensReport {
    pub fn per_run_ok(&self) -> bool {
        self.failures.total() == 0
    }

    pub fn tails_ok(&self) -> bool {
        self.tails.iter().all(|c| c.pass)
    }
}

/// A labelled generalized monomial for the tail panel.
#[derive(Debug, Clone, PartialEq)]
pub struct GenPanelMonomial {
    pub label: String,
    pub monomial: GenMonomial<f64>,
}

#[derive(Clone, Copy)]
enum Failure {
    Witness,
    Sensitivity,
    Quota,
    Active,
    Other,
}

struct Outcome {
    free: usize,
    active: usize,
    failure: Option<Failure>,
    mon_degs: Vec<u8>,
}

/// Runs the sampler `trials` times on `(f, F)` with `V = [n]` and checks,
/// on every run, the witness, `s(f|ρ) = |ρ|` on the restricted table, the
/// active-branch quota and the active-call lower bound.
pub fn verify_max_sens_distribution(
    f: &TruthTable,
    set: &[u32],
    trials: usize,
    seed: u64,
    panel: &[GenPanelMonomial],
    slack: Option<f64>,
) -> Result<MaxSensReport> {
    f.require_boolean()?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if set.is_empty() {
        return Err(Error::EmptyInputSet);
    }
    if let Some((a, b)) = find_violation(set, f)? {
        return Err(Error::NotSeparating(a, b));
    }
    let n = f.n();
    let bound = active_lower_bound(set.len(), n);
    let outcomes = run_trials(trials, seed, |_, rng| match max_sensitivity_restriction(full_mask(n), f, set, n.max(2), rng) {
        Err(e) => Outcome {
            free: 0,
            active: 0,
            failure: Some(match e {
                Error::QuotaMissed { .. } => Failure::Quota,
                _ => Failure::Other,
            }),
            mon_degs: Vec::new(),
        },
        Ok((rho, trace)) => {
            let failure = if !witness_valid(f, set, &rho, trace.witness) {
                Some(Failure::Witness)
            } else if f.restrict(&rho).map(|g| sensitivity(&g)).ok() != Some(trace.free_count) {
                Some(Failure::Sensitivity)
            } else if (trace.active_count as f64) < bound {
                Some(Failure::Active)
            } else {
                None
            };
            Outcome {
                free: trace.free_count,
                active: trace.active_count,
                failure,
                mon_degs: panel.iter().map(|m| m.monomial.restricted_degree(&rho) as u8).collect(),
            }
        }
    });
    let mut failures = MaxSensFailures::default();
    for o in &outcomes {
        match o.failure {
            Some(Failure::Witness) => failures.witness += 1,
            Some(Failure::Sensitivity) => failures.sensitivity += 1,
            Some(Failure::Quota) => failures.quota += 1,
            Some(Failure::Active) => failures.active += 1,
            Some(Failure::Other) => failures.other += 1,
            None => {}
        }
    }
    let cells: usize = panel.iter().map(|m| m.monomial.degree()).sum();
    let slack = slack.unwrap_or_else(|| bonferroni_slack(trials, cells));
    let mut tails = Vec::new();
    for (k, m) in panel.iter().enumerate() {
        let counts = histogram(outcomes.iter().map(|o| o.mon_degs.get(k).copied().unwrap_or(0) as usize));
        tails.extend(tail_cells(&m.label, m.monomial.degree(), &counts, trials, slack));
    }
    let total_active: usize = outcomes.iter().map(|o| o.active).sum();
    let total_free: usize = outcomes.iter().map(|o| o.free).sum();
    Ok(MaxSensReport {
        n,
        set_size: set.len(),
        trials,
        seed,
        active_bound: bound,
        failures,
        min_active: outcomes.iter().map(|o| o.active).min().unwrap_or(0),
        mean_active: total_active as f64 / trials as f64,
        mean_free: total_free as f64 / trials as f64,
        free_hist: histogram(outcomes.iter().map(|o| o.free)),
        active_hist: histogram(outcomes.iter().map(|o| o.active)),
        tails,
    })
}
