// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Check, Report};
use crate::approx;
use crate::boolfun::{FunctionSpec, NamedFunction};
use crate::error::{Error, Result};
use crate::maxdeg::verify_max_degree_distribution;
use crate::poly::mobius_from_table;
use crate::stats::trial_seed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub vars: usize,
    pub log2_spar: f64,
    pub log2_l1: f64,
    /// Sparsity of the constructed 1/3-approximator, where one exists in the zoo.
    pub log2_approx_spar: Option<f64>,
    pub log2_gl1_ub: f64,
    pub mean_free: f64,
}

fn family_spec(family: &str, n: usize) -> Result<FunctionSpec> {
    if family == "file" {
        return Err(Error::InvalidParameter("file functions have no size parameter".into()));
    }
    format!("{family}:{n}").parse()
}

/// One row per `n`: exact measures, the constructed approximator's size,
/// the generalized ℓ1 upper bound and the mean free count of max-degree runs.
pub fn compare_scaling(report: &mut Report, family: &str, ns: &[usize], trials: usize, seed: u64) -> Result<Vec<ScalingRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for (idx, &n) in ns.iter().enumerate() {
        let spec = family_spec(family, n)?;
        let f = NamedFunction::new(spec.clone())?;
        let p = mobius_from_table(&f.table);
        let spar = p.sparsity();
        let l1 = p.l1() as f64;
        let approx_spar = match spec {
            FunctionSpec::Or(n) if n >= 2 => Some(approx::chebyshev_or_approximator(n)?.sparsity() as f64),
            FunctionSpec::Thr(n) if n >= 2 => {
                let t = approx::default_collection_size(n);
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, idx as u64));
                Some(approx::thr_approximator(n, t, approx::DEFAULT_SAMPLING_BUDGET, &mut rng)?.poly.sparsity() as f64)
            }
            _ => None,
        };
        let gl1 = spec.genpoly().map(|g| g.measures().gl1_ub).unwrap_or(l1).min(l1);
        let mean_free = if f.table.is_constant() {
            0.0
        } else {
            let r = verify_max_degree_distribution(&f.table, trials, trial_seed(seed, idx as u64), &[], None)?;
            let total: usize = r.free_hist.iter().enumerate().map(|(k, c)| k * c).sum();
            total as f64 / trials as f64
        };
        let param = format!("fn={family}:{n}");
        match spec {
            FunctionSpec::Or(n) => {
                let want = (1u64 << n) - 1;
                report.push(Check::assertion("spar", &param, spar as f64, Some(want as f64), spar as u64 == want));
            }
            FunctionSpec::Thr(n) => report.push(Check::assertion("spar", &param, spar as f64, Some((n + 1) as f64), spar == n + 1)),
            _ => report.push(Check::info("spar", &param, spar as f64)),
        }
        report.push(Check::info("log2_spar", &param, (spar as f64).log2()));
        rows.push(ScalingRow {
            n,
            vars: f.n(),
            log2_spar: (spar as f64).log2(),
            log2_l1: l1.log2(),
            log2_approx_spar: approx_spar.map(f64::log2),
            log2_gl1_ub: gl1.log2(),
            mean_free,
        });
    }
    report.detail("rows", &rows);
    Ok(rows)
}
