// SPDX-License-Identifier: Apache-2.0

//! Acceptance battery: thirteen criteria, one verdict line each. Runs
//! without the libtest harness so the verdicts are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use boolspar::approx::{
    amplify_value, chebyshev_coeffs, chebyshev_degree, chebyshev_or_approximator, coefficient_bound_holds,
    default_collection_size, thr_approximator, verify_thr_approximator, DEFAULT_SAMPLING_BUDGET,
};
use boolspar::bits::{expand, full_mask};
use boolspar::boolfun::{
    critical_inputs, dense_sensitive_subset, independent_zero_restriction, is_separating, mbs, restrict_set,
    FunctionSpec, NamedFunction,
};
use boolspar::dtree::DecisionTree;
use boolspar::genpoly::GenMonomial;
use boolspar::maxdeg::{verify_max_degree_distribution, PanelMonomial};
use boolspar::maxsens::{verify_max_sens_distribution, GenPanelMonomial};
use boolspar::{mobius_from_table, table_from_poly, Assign, Restriction, TruthTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

type Criterion = (&'static str, u64, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(spec: &str) -> TruthTable {
    NamedFunction::parse(spec).unwrap().table
}

/// Möbius coefficients by the defining alternating sum over subsets.
fn naive_mobius(f: &TruthTable) -> Vec<i64> {
    let n = f.n();
    (0..1u32 << n)
        .map(|s| {
            let mut acc = 0i64;
            let mut t = s;
            loop {
                let sign = if (s ^ t).count_ones() % 2 == 0 { 1 } else { -1 };
                acc += sign * f.get(t);
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            acc
        })
        .collect()
}

fn naive_sensitive(f: &TruthTable, x: u32) -> u32 {
    (0..f.n()).filter(|&i| f.get(x) != f.get(x ^ 1 << i)).fold(0, |m, i| m | 1 << i)
}

fn naive_separating(f: &TruthTable, set: &[u32]) -> bool {
    set.iter().enumerate().all(|(a, &x)| {
        set[a + 1..].iter().all(|&y| (x ^ y) & (naive_sensitive(f, x) | naive_sensitive(f, y)) != 0)
    })
}

fn random_restriction(n: usize, rng: &mut impl Rng) -> Restriction {
    let assign: Vec<Assign> = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => Assign::Zero,
            1 => Assign::One,
            _ => Assign::Star,
        })
        .collect();
    Restriction::from_assignments(&assign).unwrap()
}

fn c1_exact_measures() -> Verdict {
    for n in 2..=16 {
        let m = mobius_from_table(&table(&format!("or:{n}"))).measures();
        let want = (1usize << n) - 1;
        ensure(m.spar == want && m.l1 == want as f64, || format!("OR_{n}: spar {} l1 {}", m.spar, m.l1))?;
        let a = mobius_from_table(&table(&format!("and:{n}"))).measures();
        ensure(a.spar == 1, || format!("AND_{n}: spar {}", a.spar))?;
    }
    for n in 3..=16 {
        let m = mobius_from_table(&table(&format!("thr:{n}"))).measures();
        ensure(m.spar == n + 1 && m.l1 == (2 * n - 1) as f64, || format!("Thr_{n}: spar {} l1 {}", m.spar, m.l1))?;
    }
    Ok("OR/AND n=2..16, Thr n=3..16 exact".into())
}

fn c2_roundtrip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..1000 {
        let n = rng.gen_range(1..=10);
        let f = TruthTable::from_predicate(n, |_| rng.gen()).unwrap();
        let p = mobius_from_table(&f);
        ensure(table_from_poly(&p).unwrap() == f, || format!("table {k}: round trip"))?;
        if n <= 8 {
            let naive = naive_mobius(&f);
            ensure((0..1u32 << n).all(|s| p.coeff(s) == naive[s as usize]), || format!("table {k}: coefficients"))?;
        }
        let rho = random_restriction(n, &mut rng);
        let fr = f.restrict(&rho).unwrap();
        let pr = p.restrict(&rho);
        let keep = full_mask(n) & !rho.set_vars();
        if keep != 0 {
            let ok = (0..1u32 << keep.count_ones()).all(|y| fr.get(y) == pr.eval(expand(y, keep)));
            ensure(ok, || format!("table {k}: restriction pointwise"))?;
        } else {
            ensure(fr.get(0) == pr.eval(0), || format!("table {k}: full restriction"))?;
        }
    }
    Ok("1000 tables, n<=10".into())
}

fn c3_maxdeg_per_run() -> Verdict {
    let mut notes = Vec::new();
    for spec in ["or:8", "parity:8", "and-or2:4", "majority:7"] {
        let r = verify_max_degree_distribution(&table(spec), 10_000, 3, &[], None).map_err(|e| e.to_string())?;
        ensure(r.per_run_ok(), || format!("{spec}: failures {:?}", r.failures))?;
        ensure(r.min_active as f64 >= r.active_bound, || format!("{spec}: min active {}", r.min_active))?;
        notes.push(format!("{spec} min_active={}>={:.2}", r.min_active, r.active_bound));
    }
    Ok(notes.join(", "))
}

fn c4_maxdeg_tail() -> Verdict {
    let panel = [PanelMonomial { label: "x1..x8".into(), vars: 0xff }];
    let r = verify_max_degree_distribution(&table("parity:8"), 100_000, 4, &panel, Some(0.005)).map_err(|e| e.to_string())?;
    ensure(r.tails.len() == 8, || format!("{} tail cells", r.tails.len()))?;
    for c in &r.tails {
        ensure(c.pass, || format!("t={}: {} > {} + 0.005", c.t, c.empirical, c.bound))?;
    }
    let worst = r.tails.iter().map(|c| c.empirical - c.bound).fold(f64::MIN, f64::max);
    Ok(format!("t=1..8, max(emp - 2^-t) = {worst:.4}"))
}

fn c5_maxsens_per_run() -> Verdict {
    let mut notes = Vec::new();
    for (spec, which) in [("majority:5", "M1"), ("thr:8", "M0"), ("or:6", "M0+M1")] {
        let f = table(spec);
        let c = critical_inputs(&f).map_err(|e| e.to_string())?;
        let set = match which {
            "M1" => c.m1,
            "M0" => c.m0,
            _ => c.both(),
        };
        let r = verify_max_sens_distribution(&f, &set, 10_000, 5, &[], None).map_err(|e| e.to_string())?;
        ensure(r.per_run_ok(), || format!("{spec}/{which}: failures {:?}", r.failures))?;
        notes.push(format!("{spec}/{which} |F|={} min_active={}", set.len(), r.min_active));
    }
    Ok(notes.join(", "))
}

fn c6_maxsens_tail() -> Verdict {
    let f = table("majority:5");
    let set = critical_inputs(&f).map_err(|e| e.to_string())?.m1;
    let panel: Vec<GenPanelMonomial> = [("x1x2x3x4x5", 0b11111, 0), ("x1~x2x3~x4x5", 0b10101, 0b01010), ("~x1..~x5", 0, 0b11111), ("x1~x2", 0b01, 0b10)]
        .into_iter()
        .map(|(l, p, n)| GenPanelMonomial { label: l.into(), monomial: GenMonomial::new(p, n, 1.0).unwrap() })
        .collect();
    let r = verify_max_sens_distribution(&f, &set, 100_000, 6, &panel, Some(0.005)).map_err(|e| e.to_string())?;
    for c in &r.tails {
        ensure(c.pass, || format!("{} t={}: {} > {} + 0.005", c.monomial, c.t, c.empirical, c.bound))?;
    }
    let worst = r.tails.iter().map(|c| c.empirical - c.bound).fold(f64::MIN, f64::max);
    Ok(format!("{} cells, max(emp - 2^-t) = {worst:.4}", r.tails.len()))
}

/// Chebyshev coefficients from `T_{k+1} = 2z T_k − T_{k−1}`.
fn recurrence_coeffs(d: usize) -> Vec<i128> {
    let (mut a, mut b) = (vec![1i128], vec![0i128, 1]);
    if d == 0 {
        return a;
    }
    for _ in 1..d {
        let mut c = vec![0i128; b.len() + 1];
        for (k, &v) in b.iter().enumerate() {
            c[k + 1] += 2 * v;
        }
        for (k, &v) in a.iter().enumerate() {
            c[k] -= v;
        }
        a = b;
        b = c;
    }
    b
}

fn chebyshev_t(d: usize, z: f64) -> f64 {
    if z.abs() <= 1.0 {
        (d as f64 * z.acos()).cos()
    } else {
        (d as f64 * z.acosh()).cosh()
    }
}

fn c7_chebyshev() -> Verdict {
    let mut worst = 0.0f64;
    for n in [4usize, 9, 16, 25, 100] {
        let q = chebyshev_or_approximator(n).map_err(|e| e.to_string())?;
        let d = chebyshev_degree(n);
        let top = chebyshev_t(d, n as f64 / (n - 1) as f64);
        for j in 0..=n {
            let target = if j == 0 { 0.0 } else { 1.0 };
            let oracle = 1.0 - chebyshev_t(d, (n - j) as f64 / (n - 1) as f64) / top;
            ensure((q.level_values[j] - oracle).abs() <= 1e-9, || format!("n={n} level {j}: {} vs {oracle}", q.level_values[j]))?;
            worst = worst.max((q.level_values[j] - target).abs());
        }
        let err = q.max_level_error(|j| if j == 0 { 0.0 } else { 1.0 });
        ensure(err <= 1.0 / 3.0 - 1e-6, || format!("n={n}: error {err}"))?;
    }
    for d in 0..=40 {
        ensure(chebyshev_coeffs(d) == recurrence_coeffs(d), || format!("T_{d} coefficients"))?;
        let max = recurrence_coeffs(d).iter().map(|c| c.unsigned_abs()).max().unwrap();
        ensure(max <= 3u128.pow(d as u32) && coefficient_bound_holds(d), || format!("T_{d}: max coeff {max}"))?;
    }
    Ok(format!("max level error {worst:.4}; |coeff(T_d)| <= 3^d for d<=40"))
}

fn c8_threshold() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut notes = Vec::new();
    for n in [8usize, 12, 16] {
        let t = default_collection_size(n);
        let a = thr_approximator(n, t, DEFAULT_SAMPLING_BUDGET, &mut rng).map_err(|e| e.to_string())?;
        let pairs = &a.collection.pairs;
        let sep = |s: u32, i: usize, j: usize| (s >> i & 1) != (s >> j & 1);
        for i in 0..n {
            for j in i + 1..n {
                let c = pairs.iter().filter(|&&(x, y)| sep(x, i, j) || sep(y, i, j)).count();
                ensure(3 * c >= 2 * t, || format!("n={n}: pair ({i},{j}) separated {c}/{t}"))?;
            }
        }
        let check = verify_thr_approximator(&a).map_err(|e| e.to_string())?;
        ensure(check.pass(), || format!("n={n}: {check:?}"))?;
        // Direct evaluation of the normalized polynomial on every input.
        let full = full_mask(n);
        for x in 0..=full {
            let g = a.poly.eval(x);
            if (full & !x).count_ones() <= 1 {
                ensure((g - 1.0).abs() <= 1e-9, || format!("n={n}: g({x:b}) = {g}"))?;
            } else {
                ensure(g <= 1.0 / 3.0 + 1e-9, || format!("n={n}: g({x:b}) = {g}"))?;
            }
        }
        let spar = a.poly.sparsity();
        ensure(spar <= 9 * t, || format!("n={n}: spar {spar} > 9t"))?;
        notes.push(format!("n={n} t={t} spar={spar}"));
    }
    Ok(notes.join(", "))
}

/// `f(x) = 1` iff `x` contains one of the generators.
fn random_monotone(n: usize, rng: &mut impl Rng) -> TruthTable {
    let gens: Vec<u32> = (0..rng.gen_range(1..=4))
        .map(|_| loop {
            let g = rng.gen::<u32>() & full_mask(n);
            if g != 0 {
                break g;
            }
        })
        .collect();
    TruthTable::from_predicate(n, |x| gens.iter().any(|&g| g & !x == 0)).unwrap()
}

fn c9_separating() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut restrictions = 0;
    for k in 0..100 {
        let n = rng.gen_range(2..=8);
        let f = random_monotone(n, &mut rng);
        let c = critical_inputs(&f).map_err(|e| e.to_string())?;
        for (name, set) in [("M0", &c.m0), ("M1", &c.m1)] {
            ensure(is_separating(set, &f).unwrap() && naive_separating(&f, set), || format!("f{k} {name} not separating"))?;
            let (_, sub) = dense_sensitive_subset(set, &f).map_err(|e| e.to_string())?;
            ensure(2 * n * sub.len() >= set.len(), || format!("f{k} {name}: |F'|={} |F|={}", sub.len(), set.len()))?;
            for _ in 0..10 {
                let rho = random_restriction(n, &mut rng);
                let fr = f.restrict(&rho).unwrap();
                let sr = restrict_set(set, &rho);
                ensure(is_separating(&sr, &fr).unwrap() && naive_separating(&fr, &sr), || format!("f{k} {name}: restriction"))?;
                restrictions += 1;
            }
        }
    }
    Ok(format!("100 monotone functions, {restrictions} restrictions"))
}

fn c10_mbs() -> Verdict {
    for n in 1..=10 {
        let o = mbs(&table(&format!("or:{n}"))).map_err(|e| e.to_string())?;
        let a = mbs(&table(&format!("and:{n}"))).map_err(|e| e.to_string())?;
        ensure(o == n && a == 1, || format!("n={n}: MBS(OR)={o} MBS(AND)={a}"))?;
    }
    let trials = 100_000;
    let monomials = [0b1u32, 0b11, 0b111, 0b1111, 0xff];
    let mut survive = [0usize; 5];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..trials {
        let rho = independent_zero_restriction(8, &mut rng).map_err(|e| e.to_string())?;
        ensure(rho.ones() == 0, || "independent-zero restriction set a 1".into())?;
        for (k, &m) in monomials.iter().enumerate() {
            survive[k] += (m & rho.zeros() == 0) as usize;
        }
    }
    let mut worst = 0.0f64;
    for (k, &m) in monomials.iter().enumerate() {
        let want = 0.5f64.powi(m.count_ones() as i32);
        let got = survive[k] as f64 / trials as f64;
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 0.005, || format!("deg {}: survival {got} vs {want}", m.count_ones()))?;
    }
    Ok(format!("MBS exact n<=10; survival max deviation {worst:.4}"))
}

fn c11_trees() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..1000 {
        let n = rng.gen_range(1..=8);
        let tree = DecisionTree::random(n, n, &mut rng);
        let g = tree.to_genpoly();
        let leaves = tree.size();
        ensure((0..1u32 << n).all(|x| g.eval(x) == tree.eval(x) as i64), || format!("tree {k}: pointwise"))?;
        let m = g.measures();
        ensure(m.gspar_ub <= leaves && m.gl1_ub <= leaves as f64, || format!("tree {k}: {m:?} vs {leaves} leaves"))?;
    }
    Ok("1000 trees, n<=8".into())
}

fn sink_oracle(m: usize, x: u32) -> bool {
    // Edge (i, j) with i < j is variable index `e`; bit 1 points it at i.
    let mut e = 0;
    let mut indeg = vec![0usize; m];
    for i in 0..m {
        for j in i + 1..m {
            if x >> e & 1 == 1 {
                indeg[i] += 1;
            } else {
                indeg[j] += 1;
            }
            e += 1;
        }
    }
    indeg.iter().any(|&d| d == m - 1)
}

fn fmixed_oracle(k: usize, x: u32) -> bool {
    let y = x >> 2;
    match x & 3 {
        0b00 => false,
        0b11 => true,
        0b01 => y != 0,
        _ => y == full_mask(k),
    }
}

/// Exact sparsities of `f_mixed` with `|y| = 6, 8`, frozen from [`naive_mobius`].
const FMIXED_SPAR: [(usize, usize); 2] = [(6, 127), (8, 511)];

fn c12_witnesses() -> Verdict {
    for m in [4usize, 5] {
        let spec = FunctionSpec::Sink(m);
        let f = NamedFunction::new(spec.clone()).unwrap().table;
        let n = m * (m - 1) / 2;
        ensure((0..1u32 << n).all(|x| f.bit(x) == sink_oracle(m, x)), || format!("sink {m}: table"))?;
        let g = spec.genpoly().unwrap();
        ensure(g.terms().len() == m, || format!("sink {m}: {} terms", g.terms().len()))?;
        ensure((0..1u32 << n).all(|x| g.eval(x) == f.get(x)), || format!("sink {m}: genpoly"))?;
    }
    for k in 1..=8 {
        let spec = FunctionSpec::FMixed(k);
        let f = NamedFunction::new(spec.clone()).unwrap().table;
        ensure((0..1u32 << (k + 2)).all(|x| f.bit(x) == fmixed_oracle(k, x)), || format!("fmixed {k}: table"))?;
        let g = spec.genpoly().unwrap();
        ensure(g.terms().len() == 4, || format!("fmixed {k}: {} terms", g.terms().len()))?;
        ensure((0..1u32 << (k + 2)).all(|x| g.eval(x) == f.get(x)), || format!("fmixed {k}: genpoly"))?;
    }
    let mut notes = Vec::new();
    for (k, frozen) in FMIXED_SPAR {
        let f = table(&format!("fmixed:{k}"));
        let naive = naive_mobius(&f).iter().filter(|&&c| c != 0).count();
        let spar = mobius_from_table(&f).sparsity();
        ensure(naive == frozen && spar == frozen, || format!("fmixed {k}: spar {spar}, oracle {naive}"))?;
        ensure(spar >= 1 << (k / 2), || format!("fmixed {k}: spar {spar} < 2^(n/2)"))?;
        notes.push(format!("spar(fmixed:{k})={spar}"));
    }
    Ok(format!("sink m=4,5 and fmixed |y|<=8 exact; {}", notes.join(", ")))
}

fn c13_amplifier() -> Verdict {
    let per_band = 5_000;
    let mut worst = 0.0f64;
    for i in 0..per_band {
        let y = -0.44 + 0.88 * i as f64 / (per_band - 1) as f64;
        for y in [y, y + 1.0] {
            let z = amplify_value(y, 4);
            let dist = z.abs().min((z - 1.0).abs());
            worst = worst.max(dist);
            ensure(dist <= 1.0 / 3.0, || format!("y={y}: image {z}"))?;
        }
    }
    Ok(format!("{} points, max distance {worst:.4}", 2 * per_band))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("exact measures", 5, c1_exact_measures),
        ("Mobius round trip and restriction", 30, c2_roundtrip),
        ("max-degree per-run checks", 120, c3_maxdeg_per_run),
        ("max-degree tail", 120, c4_maxdeg_tail),
        ("max-sensitivity per-run checks", 120, c5_maxsens_per_run),
        ("max-sensitivity generalized tail", 120, c6_maxsens_tail),
        ("Chebyshev approximator", 5, c7_chebyshev),
        ("threshold approximator", 60, c8_threshold),
        ("separating sets", 60, c9_separating),
        ("MBS and independent-zero restriction", 60, c10_mbs),
        ("decision-tree conversion", 30, c11_trees),
        ("witness constructions", 30, c12_witnesses),
        ("amplifier sweep", 5, c13_amplifier),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > Duration::from_secs(*budget) => Err(format!("{d}; over time budget")),
            v => v,
        };
        match verdict {
            Ok(d) => println!("criterion {id:>2} PASS  {name}: {d} [{:.2}s / {budget}s]", took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {e} [{:.2}s / {budget}s]", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
