// SPDX-License-Identifier: Apache-2.0

//! Low-sparsity approximator for `Thr^n_{n−1}` from a 2/3-separating collection.
//!
//! For a pair `(S1, S2)` let `A = x_S`, `B = x_{S̄}` and `X = x_{[n]}` (so
//! `A·B = X`). Each factor `1 − (1 − A)(1 − B)` equals `A + B − X`, and the
//! product of the two factors is `A1A2 + A1B2 + B1A2 + B1B2 − 3X`, at most
//! five De Morgan monomials per pair.

use rand::Rng;
use serde::Serialize;

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::poly::{IntPoly, MultilinearPoly, RealPoly};
use crate::MAX_VARS;

/// Default collection size `⌈216·ln(n²)⌉`.
pub fn default_collection_size(n: usize) -> usize {
    (216.0 * ((n * n) as f64).ln()).ceil() as usize
}

/// Default number of collections tried before giving up.
pub const DEFAULT_SAMPLING_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatingCollection {
    pub n: usize,
    pub pairs: Vec<(u32, u32)>,
    /// Smallest number of pairs separating any `{i, j}`.
    pub min_separated: usize,
    /// `min_separated / |pairs|`.
    pub delta: f64,
}

#[inline]
fn separates(s: u32, i: usize, j: usize) -> bool {
    (s >> i & 1) != (s >> j & 1)
}

/// Minimum over index pairs `{i, j}` of the number of collection elements
/// that separate it.
pub fn min_separation(n: usize, pairs: &[(u32, u32)]) -> usize {
    let mut min = usize::MAX;
    for i in 0..n {
        for j in i + 1..n {
            let c = pairs.iter().filter(|&&(a, b)| separates(a, i, j) || separates(b, i, j)).count();
            min = min.min(c);
        }
    }
    if min == usize::MAX {
        pairs.len()
    } else {
        min
    }
}

impl SeparatingCollection {
    pub fn new(n: usize, pairs: Vec<(u32, u32)>) -> Self {
        let min_separated = min_separation(n, &pairs);
        let delta = if pairs.is_empty() { 0.0 } else { min_separated as f64 / pairs.len() as f64 };
        SeparatingCollection { n, pairs, min_separated, delta }
    }

    /// Exact check `3·min_separated ≥ 2·|pairs|`.
    pub fn is_two_thirds_separating(&self) -> bool {
        !self.pairs.is_empty() && 3 * self.min_separated >= 2 * self.pairs.len()
    }
}

/// `Σ_{(S1,S2)} f_{(S1,S2)}` with integer coefficients.
pub fn collection_sum(n: usize, pairs: &[(u32, u32)]) -> IntPoly {
    let full = full_mask(n);
    let mut terms = Vec::with_capacity(5 * pairs.len());
    for &(s1, s2) in pairs {
        let (b1, b2) = (full & !s1, full & !s2);
        terms.extend([(s1 | s2, 1), (s1 | b2, 1), (b1 | s2, 1), (b1 | b2, 1), (full, -3)]);
    }
    MultilinearPoly::from_terms_unchecked(n, terms)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThrApproximator {
    pub collection: SeparatingCollection,
    /// Number of sampled collections, including the accepted one.
    pub attempts: usize,
    #[serde(skip)]
    pub sum: IntPoly,
    #[serde(skip)]
    pub poly: RealPoly,
}

/// Samples collections of `t` uniformly random pairs until one is exactly
/// 2/3-separating, then builds `g = (1/t)·Σ f_{(S1,S2)}`.
pub fn thr_approximator<R: Rng + ?Sized>(n: usize, t: usize, budget: usize, rng: &mut R) -> Result<ThrApproximator> {
    if !(3..=MAX_VARS).contains(&n) {
        return Err(Error::InvalidParameter(format!("threshold approximator needs 3 <= n <= {MAX_VARS}, got {n}")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("collection size must be positive".into()));
    }
    let full = full_mask(n);
    for attempt in 1..=budget {
        let pairs: Vec<(u32, u32)> = (0..t).map(|_| (rng.gen::<u32>() & full, rng.gen::<u32>() & full)).collect();
        let collection = SeparatingCollection::new(n, pairs);
        if collection.is_two_thirds_separating() {
            let sum = collection_sum(n, &collection.pairs);
            let poly = sum.to_real().scale(1.0 / t as f64);
            return Ok(ThrApproximator { collection, attempts: attempt, sum, poly });
        }
    }
    Err(Error::SamplingBudgetExhausted(budget))
}

/// Outcome of the exhaustive check of a threshold approximator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThrCheck {
    pub ones_exact: bool,
    pub zeros_within_third: bool,
    /// Largest value of `g` on a 0-input.
    pub max_zero_value: f64,
    pub max_error: f64,
}

impl ThrCheck {
    pub fn pass(&self) -> bool {
        self.ones_exact && self.zeros_within_third
    }
}

/// Evaluates the integer sum on all of `{0,1}^n`: it must equal `t` on
/// inputs with at most one zero and be at most `t/3` elsewhere.
pub fn verify_thr_approximator(a: &ThrApproximator) -> Result<ThrCheck> {
    let n = a.collection.n;
    let t = a.collection.pairs.len() as i64;
    let table = a.sum.to_table()?;
    let mut ones_exact = true;
    let mut zeros_ok = true;
    let mut max_zero: i64 = i64::MIN;
    let mut max_err = 0.0f64;
    for (x, &v) in table.values().iter().enumerate() {
        if (x as u32).count_ones() as usize + 1 >= n {
            ones_exact &= v == t;
            max_err = max_err.max(((v - t) as f64 / t as f64).abs());
        } else {
            zeros_ok &= v >= 0 && 3 * v <= t;
            max_zero = max_zero.max(v);
            max_err = max_err.max((v as f64 / t as f64).abs());
        }
    }
    Ok(ThrCheck {
        ones_exact,
        zeros_within_third: zeros_ok,
        max_zero_value: max_zero as f64 / t as f64,
        max_error: max_err,
    })
}
