// SPDX-License-Identifier: Apache-2.0

//! Chebyshev-based approximator for OR.
//!
//! With `d = ⌈2√n⌉`, `p(z) = 1 − T_d((n−z)/(n−1)) / T_d(n/(n−1))` and
//! `q(x) = p(|x|)`. Since `q` is symmetric its multilinear coefficients depend
//! only on `|S|`: the coefficient on a size-`k` set is `Δ^k p(0)`.
//!
//! `(n−1)^d · T_d((n−j)/(n−1))` is an integer for integer `j`, so every level
//! value and finite difference is computed as an exact rational and rounded
//! once at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::poly::{MultilinearPoly, RealPoly};
use crate::MAX_VARS;

/// Largest `n` accepted by [`chebyshev_or_approximator`].
pub const CHEBYSHEV_MAX_N: usize = 400;

/// Coefficients of `T_d`, lowest power first.
pub fn chebyshev_coeffs(d: usize) -> Vec<i128> {
    let mut prev = vec![1i128];
    if d == 0 {
        return prev;
    }
    let mut cur = vec![0i128, 1];
    for _ in 1..d {
        let mut next = vec![0i128; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += 2 * c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_d(z)` by the three-term recurrence.
pub fn chebyshev_eval(d: usize, z: f64) -> f64 {
    let (mut a, mut b) = (1.0, z);
    if d == 0 {
        return a;
    }
    for _ in 1..d {
        let c = 2.0 * z * b - a;
        a = b;
        b = c;
    }
    b
}

/// Whether every coefficient of `T_d` is at most `3^d` in magnitude.
pub fn coefficient_bound_holds(d: usize) -> bool {
    let bound = 3i128.pow(d as u32);
    chebyshev_coeffs(d).iter().all(|c| c.abs() <= bound)
}

/// `num/den` rounded to the nearest `f64`.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.is_negative() != den.is_negative() { -1.0 } else { 1.0 };
    let (a, b) = (num.abs(), den.abs());
    let shift = b.bits() as i64 - a.bits() as i64 + 64;
    let q = if shift >= 0 { (a << shift as usize) / b } else { a / (b << (-shift) as usize) };
    sign * q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// A symmetric multilinear polynomial `Σ_S c_{|S|} x_S`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricPoly {
    pub n: usize,
    /// `c_k` for `k = 0..=degree`.
    pub level_coeffs: Vec<f64>,
    /// Exact value on Hamming level `j`, rounded, for `j = 0..=n`.
    pub level_values: Vec<f64>,
}

impl SymmetricPoly {
    pub fn degree(&self) -> usize {
        self.level_coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    /// `Σ_{c_k ≠ 0} C(n, k)`.
    pub fn sparsity(&self) -> u128 {
        self.level_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, _)| binomial(self.n, k).to_u128().unwrap_or(u128::MAX))
            .fold(0u128, u128::saturating_add)
    }

    /// `Σ_k |c_k|·C(n, k)`.
    pub fn l1(&self) -> f64 {
        self.level_coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * binomial(self.n, k).to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// `max_j |q(level j) − target(j)|`.
    pub fn max_level_error(&self, target: impl Fn(usize) -> f64) -> f64 {
        self.level_values
            .iter()
            .enumerate()
            .map(|(j, v)| (v - target(j)).abs())
            .fold(0.0, f64::max)
    }

    /// Expands into explicit monomials (`n ≤ 24`).
    pub fn to_multilinear(&self) -> Result<RealPoly> {
        if self.n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(self.n));
        }
        let terms = (0..=full_mask(self.n))
            .filter_map(|s| {
                let c = *self.level_coeffs.get(s.count_ones() as usize)?;
                (c != 0.0).then_some((s, c))
            })
            .collect::<Vec<_>>();
        MultilinearPoly::from_terms(self.n, terms)
    }
}

/// `d = ⌈2√n⌉`.
pub fn chebyshev_degree(n: usize) -> usize {
    let mut d = (2.0 * (n as f64).sqrt()).ceil() as usize;
    // Guard against rounding in the square root.
    while d > 0 && (d - 1) * (d - 1) >= 4 * n {
        d -= 1;
    }
    while d * d < 4 * n {
        d += 1;
    }
    d
}

/// The Chebyshev approximator of `OR_n`.
pub fn chebyshev_or_approximator(n: usize) -> Result<SymmetricPoly> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("Chebyshev approximator needs n >= 2, got {n}")));
    }
    if n > CHEBYSHEV_MAX_N {
        return Err(Error::TooLargeForExact { n, limit: CHEBYSHEV_MAX_N });
    }
    let d = chebyshev_degree(n);
    let t: Vec<BigInt> = chebyshev_coeffs(d).into_iter().map(BigInt::from).collect();
    let m = BigInt::from(n - 1);
    // scaled[j] = (n−1)^d · T_d((n−j)/(n−1)).
    let scaled: Vec<BigInt> = (0..=n)
        .map(|j| {
            let a = BigInt::from(n as i64 - j as i64);
            let mut s = BigInt::zero();
            for (k, tk) in t.iter().enumerate() {
                if !tk.is_zero() {
                    s += tk * num_traits::pow(a.clone(), k) * num_traits::pow(m.clone(), d - k);
                }
            }
            s
        })
        .collect();
    let den = scaled[0].clone();
    // p(j) = (den − scaled[j]) / den.
    let nums: Vec<BigInt> = scaled.iter().map(|s| &den - s).collect();
    let level_values = nums.iter().map(|v| ratio_to_f64(v, &den)).collect();
    let top = d.min(n);
    let level_coeffs = (0..=top)
        .map(|k| {
            let mut acc = BigInt::zero();
            for (i, num) in nums.iter().enumerate().take(k + 1) {
                let term = binomial(k, i) * num;
                if (k - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            ratio_to_f64(&acc, &den)
        })
        .collect();
    Ok(SymmetricPoly { n, level_coeffs, level_values })
}
