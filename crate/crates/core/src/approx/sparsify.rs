// SPDX-License-Identifier: Apache-2.0

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{MultilinearPoly, RealPoly};

/// Draws `k` monomials i.i.d. with probability `|a_S|/ℓ1(P)`; each draw adds
/// `sign(a_S)·ℓ1(P)/k` to its monomial. Unbiased at every input.
pub fn sparsify_by_sampling<C: Coeff, R: Rng + ?Sized>(p: &MultilinearPoly<C>, k: usize, rng: &mut R) -> Result<RealPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let weights: Vec<f64> = p.terms().iter().map(|t| t.1.abs().to_f64()).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let share = p.l1().to_f64() / k as f64;
    let terms: Vec<(u32, f64)> = (0..k)
        .map(|_| {
            let (s, c) = p.terms()[dist.sample(rng)];
            (s, if c.to_f64() < 0.0 { -share } else { share })
        })
        .collect();
    MultilinearPoly::from_terms(p.n(), terms)
}

/// Hoeffding scale `ℓ1·sqrt(ln(2^{n+1}) / (2k))` for the deviation over all inputs.
pub fn predicted_deviation(l1: f64, n: usize, k: usize) -> f64 {
    l1 * (((n + 1) as f64 * std::f64::consts::LN_2) / (2.0 * k as f64)).sqrt()
}
