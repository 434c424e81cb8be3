// SPDX-License-Identifier: Apache-2.0

//! Seed derivation, parallel trial batches and empirical tail tables.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Overall confidence deficit of a report; split evenly across its cells.
pub const DEFAULT_DELTA: f64 = 1e-4;

/// Seed for trial `t` of a batch seeded with `seed` (splitmix64 finalizer).
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    let mut z = seed ^ t.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, t))
}

/// Runs `trials` independent trials in parallel; results come back in trial
/// order, so the outcome does not depend on the worker count.
pub fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync + Send,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            f(t, &mut rng)
        })
        .collect()
}

/// Two-sided Hoeffding deviation for `trials` samples at failure probability `delta`.
pub fn hoeffding_slack(trials: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * trials as f64)).sqrt()
}

/// Per-cell slack when `cells` comparisons share [`DEFAULT_DELTA`].
pub fn bonferroni_slack(trials: usize, cells: usize) -> f64 {
    hoeffding_slack(trials, DEFAULT_DELTA / cells.max(1) as f64)
}

/// One `Pr[deg(M|ρ) ≥ t] ≤ 2^{−t} + slack` comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCell {
    pub monomial: String,
    pub t: usize,
    pub empirical: f64,
    pub bound: f64,
    pub slack: f64,
    pub trials: usize,
    pub pass: bool,
}

/// Empirical tails for one monomial: `counts[t]` is the number of runs with
/// restricted degree exactly `t`.
pub fn tail_cells(label: &str, deg: usize, counts: &[usize], trials: usize, slack: f64) -> Vec<TailCell> {
    (1..=deg)
        .map(|t| {
            let hits: usize = counts.iter().skip(t).sum();
            let empirical = hits as f64 / trials as f64;
            let bound = 0.5f64.powi(t as i32);
            TailCell {
                monomial: label.to_string(),
                t,
                empirical,
                bound,
                slack,
                trials,
                pass: empirical <= bound + slack,
            }
        })
        .collect()
}

/// Histogram of small non-negative integers.
pub fn histogram(values: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut h = Vec::new();
    for v in values {
        if h.len() <= v {
            h.resize(v + 1, 0);
        }
        h[v] += 1;
    }
    h
}
