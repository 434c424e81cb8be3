// SPDX-License-Identifier: Apache-2.0

//! Adaptive restriction sampler driven by ℓ1-norm shrinkage.
//!
//! Each step either fixes a variable whose restriction keeps almost all of
//! the ℓ1 mass (passive), or splits `Q = R1·x_i + R0` and flips a fair coin
//! between `x_i = 0` (continue on `R0`) and leaving `x_i` free (continue on
//! `R1`). The resulting restriction keeps `P(f)|ρ` at full degree on its free
//! variables while every monomial loses degree geometrically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{full_mask, ones};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{mobius_from_table, MultilinearPoly};
use crate::restriction::{Assign, Restriction};
use crate::stats::{bonferroni_slack, histogram, run_trials, tail_cells, TailCell};
use crate::table::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Terminal,
    Passive,
    Active,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Set0,
    Set1,
    Free,
}

impl Action {
    fn assign(self) -> Assign {
        match self {
            Action::Set0 => Assign::Zero,
            Action::Set1 => Assign::One,
            Action::Free => Assign::Star,
        }
    }
}

/// One sampler step. `before`/`after` are ℓ1 norms here and set sizes in
/// the sensitivity sampler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub var: usize,
    pub action: Action,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RestrictionTrace {
    pub steps: Vec<Step>,
    pub active_count: usize,
    pub free_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxDegreeParams {
    pub ambient_n: usize,
    pub seed: u64,
}

/// Checks `ℓ1(R0), ℓ1(R1) ≥ ℓ1(Q)/(2n)` for every variable of `Q`.
pub fn balancedness_assert<C: Coeff>(q: &MultilinearPoly<C>, n: usize) -> Result<()> {
    let l1 = q.l1();
    let den = 2 * n as u64;
    for i in ones(q.vars()) {
        let (r1, r0) = q.split_l1(i);
        if !C::at_least_fraction(r0, l1, 1, den) || !C::at_least_fraction(r1, l1, 1, den) {
            return Err(Error::BalanceViolated {
                var: i,
                l1_r0: r0.to_f64(),
                l1_r1: r1.to_f64(),
                l1_q: l1.to_f64(),
            });
        }
    }
    Ok(())
}

/// First `(i, u)` in `V` with `ℓ1(Q|_{x_i=u}) ≥ (1 − 1/n)·ℓ1(Q)`.
fn passive_choice<C: Coeff>(q: &MultilinearPoly<C>, v: u32, n: usize) -> Option<(usize, bool, C)> {
    let l1 = q.l1();
    for i in ones(v) {
        for u in [false, true] {
            let r = q.l1_restricted(i, u);
            if C::at_least_fraction(r, l1, n as u64 - 1, n as u64) {
                return Some((i, u, r));
            }
        }
    }
    None
}

/// Samples a restriction of the variables `v` for the polynomial `q`.
pub fn max_degree_restriction<C: Coeff, R: Rng + ?Sized>(
    q: &MultilinearPoly<C>,
    v: u32,
    ambient_n: usize,
    rng: &mut R,
) -> Result<(Restriction, RestrictionTrace)> {
    if ambient_n < 2 {
        return Err(Error::AmbientTooSmall(ambient_n));
    }
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.vars() & !v != 0 {
        return Err(Error::VarsOutsideDomain);
    }
    let mut rho = Restriction::free(q.n(), v)?;
    let mut trace = RestrictionTrace::default();
    let mut q = q.clone();
    let mut v = v;
    while v != 0 {
        let before = q.l1().to_f64();
        if let Some((i, u, after)) = passive_choice(&q, v, ambient_n) {
            let action = if u { Action::Set1 } else { Action::Set0 };
            q = q.restrict_var(i, u);
            v &= !(1 << i);
            rho.set(i, action.assign())?;
            trace.steps.push(Step { kind: StepKind::Passive, var: i, action, before, after: after.to_f64() });
            continue;
        }
        // A variable of V outside Vars(Q) would have been fixed passively.
        if q.vars() != v {
            return Err(Error::VarsOutsideDomain);
        }
        balancedness_assert(&q, ambient_n)?;
        let i = v.trailing_zeros() as usize;
        let (r1, r0) = q.decompose(i);
        let action = if rng.gen::<bool>() { Action::Set0 } else { Action::Free };
        q = if action == Action::Set0 { r0 } else { r1 };
        v &= !(1 << i);
        rho.set(i, action.assign())?;
        trace.active_count += 1;
        trace.steps.push(Step { kind: StepKind::Active, var: i, action, before, after: q.l1().to_f64() });
    }
    trace.free_count = rho.free_count();
    Ok((rho, trace))
}

/// Seeded entry point with the ambient count taken from `params`.
pub fn max_degree_restriction_seeded<C: Coeff>(
    q: &MultilinearPoly<C>,
    v: u32,
    params: MaxDegreeParams,
) -> Result<(Restriction, RestrictionTrace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    max_degree_restriction(q, v, params.ambient_n, &mut rng)
}

/// Degree of the standard monomial `x_M` after `ρ`; 0 when some variable of `M` is set to 0.
pub fn restricted_monomial_degree(m: u32, rho: &Restriction) -> usize {
    if m & rho.zeros() != 0 {
        0
    } else {
        (m & rho.free_vars()).count_ones() as usize
    }
}

/// `log(ℓ1/10) / log(4n)`: every run makes at least this many active calls.
pub fn active_lower_bound(l1: f64, n: usize) -> f64 {
    (l1 / 10.0).ln() / (4.0 * n as f64).ln()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MaxDegFailures {
    pub degree: usize,
    pub zero: usize,
    pub balance: usize,
    pub active: usize,
    pub other: usize,
}

impl MaxDegFailures {
    pub fn total(&self) -> usize {
        self.degree + self.zero + self.balance + self.active + self.other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxDegReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub l1: f64,
    pub active_bound: f64,
    pub failures: MaxDegFailures,
    pub min_active: usize,
    pub free_hist: Vec<usize>,
    pub active_hist: Vec<usize>,
    pub tails: Vec<TailCell>,
}

impl MaxDegReport {
    pub fn per_run_ok(&self) -> bool {
        self.failures.total() == 0
    }

    pub fn tails_ok(&self) -> bool {
        self.tails.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy)]
enum Failure {
    Degree,
    Zero,
    Balance,
    Active,
    Other,
}

struct Outcome {
    free: usize,
    active: usize,
    failure: Option<Failure>,
    mon_degs: Vec<u8>,
}

/// A labelled monomial panel entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanelMonomial {
    pub label: String,
    pub vars: u32,
}

/// Runs the sampler on `P(f)` for `trials` derived seeds and checks every
/// run: full degree and non-vanishing of `P(f)|ρ`, balancedness at each
/// active step, and the active-call lower bound. Empirical monomial tails
/// use `slack`, or Bonferroni–Hoeffding slack when `None`.
pub fn verify_max_degree_distribution(
    f: &TruthTable,
    trials: usize,
    seed: u64,
    panel: &[PanelMonomial],
    slack: Option<f64>,
) -> Result<MaxDegReport> {
    f.require_boolean()?;
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = f.n();
    let p = mobius_from_table(f);
    let l1 = p.l1() as f64;
    let bound = active_lower_bound(l1, n);
    let full = full_mask(n);
    let outcomes = run_trials(trials, seed, |_, rng| {
        match max_degree_restriction(&p, full, n.max(2), rng) {
            Err(e) => Outcome {
                free: 0,
                active: 0,
                failure: Some(match e {
                    Error::BalanceViolated { .. } => Failure::Balance,
                    _ => Failure::Other,
                }),
                mon_degs: Vec::new(),
            },
            Ok((rho, trace)) => {
                let restricted = p.restrict(&rho);
                let failure = if restricted.is_zero() {
                    Some(Failure::Zero)
                } else if restricted.degree() != trace.free_count {
                    Some(Failure::Degree)
                } else if (trace.active_count as f64) < bound {
                    Some(Failure::Active)
                } else {
                    None
                };
                Outcome {
                    free: trace.free_count,
                    active: trace.active_count,
                    failure,
                    mon_degs: panel.iter().map(|m| restricted_monomial_degree(m.vars, &rho) as u8).collect(),
                }
            }
        }
    });
    let mut failures = MaxDegFailures::default();
    for o in &outcomes {
        match o.failure {
            Some(Failure::Degree) => failures.degree += 1,
            Some(Failure::Zero) => failures.zero += 1,
            Some(Failure::Balance) => failures.balance += 1,
            Some(Failure::Active) => failures.active += 1,
            Some(Failure::Other) => failures.other += 1,
            None => {}
        }
    }
    let cells: usize = panel.iter().map(|m| m.vars.count_ones() as usize).sum();
    let slack = slack.unwrap_or_else(|| bonferroni_slack(trials, cells));
    let mut tails = Vec::new();
    for (k, m) in panel.iter().enumerate() {
        let counts = histogram(outcomes.iter().map(|o| o.mon_degs.get(k).copied().unwrap_or(0) as usize));
        tails.extend(tail_cells(&m.label, m.vars.count_ones() as usize, &counts, trials, slack));
    }
    Ok(MaxDegReport {
        n,
        trials,
        seed,
        l1,
        active_bound: bound,
        failures,
        min_active: outcomes.iter().map(|o| o.active).min().unwrap_or(0),
        free_hist: histogram(outcomes.iter().map(|o| o.free)),
        active_hist: histogram(outcomes.iter().map(|o| o.active)),
        tails,
    })
}
