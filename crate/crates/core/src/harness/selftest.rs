// SPDX-License-Identifier: Apache-2.0

//! Quick smoke battery over every module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, Report};
use crate::approx;
use crate::boolfun::{critical_inputs, is_separating, mbs, NamedFunction};
use crate::dtree::DecisionTree;
use crate::error::Result;
use crate::maxdeg::{verify_max_degree_distribution, PanelMonomial};
use crate::maxsens::verify_max_sens_distribution;
use crate::poly::{mobius_from_table, table_from_poly};
use crate::stats::trial_seed;
use crate::table::TruthTable;

pub fn selftest(report: &mut Report, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 0));

    for (name, spar, l1) in [("or:6", 63, 63), ("and:5", 1, 1), ("thr:6", 7, 11)] {
        let p = mobius_from_table(&NamedFunction::parse(name)?.table);
        let ok = p.sparsity() == spar && p.l1() == l1;
        report.push(Check::assertion("measures", format!("fn={name}"), p.sparsity() as f64, Some(spar as f64), ok));
    }

    let mut roundtrip_fail = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let t = TruthTable::from_predicate(n, |_| rng.gen())?;
        if table_from_poly(&mobius_from_table(&t))? != t {
            roundtrip_fail += 1;
        }
    }
    report.push(Check::zero_count("roundtrip_failures", "tables=50", roundtrip_fail));

    let or4 = NamedFunction::parse("or:4")?;
    let panel = [PanelMonomial { label: "full".into(), vars: 0b1111 }];
    let r = verify_max_degree_distribution(&or4.table, 500, seed, &panel, None)?;
    report.push(Check::zero_count("maxdeg_failures", "fn=or:4", r.failures.total()));

    let maj = NamedFunction::parse("majority:5")?;
    let m1 = critical_inputs(&maj.table)?.m1;
    report.push(Check::assertion("separating", "fn=majority:5,set=minterms", m1.len() as f64, None, is_separating(&m1, &maj.table)?));
    let r = verify_max_sens_distribution(&maj.table, &m1, 500, seed, &[], None)?;
    report.push(Check::zero_count("maxsens_failures", "fn=majority:5", r.failures.total()));

    let q = approx::chebyshev_or_approximator(9)?;
    let err = q.max_level_error(|j| if j == 0 { 0.0 } else { 1.0 });
    report.push(Check::assertion("chebyshev_error", "n=9", err, Some(1.0 / 3.0), err <= 1.0 / 3.0));

    let a = approx::thr_approximator(8, approx::default_collection_size(8), approx::DEFAULT_SAMPLING_BUDGET, &mut rng)?;
    let c = approx::verify_thr_approximator(&a)?;
    report.push(Check::assertion("thr_approximator", "n=8", c.max_error, Some(1.0 / 3.0), c.pass()));

    let m = mbs(&NamedFunction::parse("or:5")?.table)?;
    report.push(Check::assertion("mbs", "fn=or:5", m as f64, Some(5.0), m == 5));

    let tree = DecisionTree::or_chain(5);
    let err = tree.to_genpoly().max_error(&tree.to_table()?)?;
    report.push(Check::assertion("tree_conversion_error", "or_chain:5", err, Some(0.0), err == 0.0));

    let worst = (0..=1000)
        .map(|i| -0.44 + 0.88 * i as f64 / 1000.0)
        .flat_map(|y| [y, y + 1.0])
        .map(|y| {
            let z = approx::amplify_value(y, 4);
            z.abs().min((z - 1.0).abs())
        })
        .fold(0.0, f64::max);
    report.push(Check::assertion("amplifier_sweep", "k=4", worst, Some(1.0 / 3.0), worst <= 1.0 / 3.0));
    Ok(())
}
