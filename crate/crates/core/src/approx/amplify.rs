// SPDX-License-Identifier: Apache-2.0

//! Error reduction by composing with univariate cubics.
//!
//! `h(y) = 3y² − 2y³` fixes 0 and 1 and pulls `[−0.36, 0.5)` toward 0 and
//! `(0.5, 1.36]` toward 1. On its own it sends `−0.44` to about `0.75`, so the
//! first stage is `g(y) = h(y) + (y − 1/2)/2`, which is symmetric about
//! `(1/2, 1/2)` and maps `[−0.44, 0.44]` into `[−0.27, 0.39]`.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{mobius_from_table, MultilinearPoly, RealPoly};
use crate::table::TruthTable;

/// Default half-width of the precondition bands around 0 and 1.
pub const DEFAULT_MARGIN: f64 = 1.0 / 3.0;

/// Widest precondition band the amplifier accepts.
pub const MAX_MARGIN: f64 = 0.44;

#[inline]
pub fn amp_h(y: f64) -> f64 {
    y * y * (3.0 - 2.0 * y)
}

#[inline]
pub fn amp_first(y: f64) -> f64 {
    amp_h(y) + 0.5 * (y - 0.5)
}

/// `h^{(k)}(g(y))`.
pub fn amplify_value(y: f64, k: usize) -> f64 {
    let mut z = amp_first(y);
    for _ in 0..k {
        z = amp_h(z);
    }
    z
}

/// Composes `P` with `h^{(k)} ∘ g` on the cube; requires every value of `P`
/// within [`DEFAULT_MARGIN`] of 0 or 1.
pub fn amplify<C: Coeff>(p: &MultilinearPoly<C>, k: usize) -> Result<RealPoly> {
    amplify_with_margin(p, k, DEFAULT_MARGIN)
}

/// As [`amplify`] with precondition bands `[−m, m] ∪ [1−m, 1+m]`, `m ≤ 0.44`.
pub fn amplify_with_margin<C: Coeff>(p: &MultilinearPoly<C>, k: usize, margin: f64) -> Result<RealPoly> {
    if !(0.0..=MAX_MARGIN).contains(&margin) {
        return Err(Error::InvalidParameter(format!("amplifier margin {margin} outside [0, {MAX_MARGIN}]")));
    }
    let table = p.to_real().to_table()?;
    let mut values = table.into_values();
    for (x, v) in values.iter_mut().enumerate() {
        if v.abs() > margin && (*v - 1.0).abs() > margin {
            return Err(Error::AmplifyPrecondition { input: x as u32, value: *v });
        }
        *v = amplify_value(*v, k);
    }
    // On the cube, composing with a univariate polynomial and reducing
    // multilinearly is the same as transforming the value table.
    Ok(mobius_from_table(&TruthTable::new(p.n(), values)?))
}

/// Drops the terms of degree `≥ d`, then amplifies with margin [`MAX_MARGIN`].
/// Returns the amplified polynomial and the dropped ℓ1 mass.
pub fn truncate_then_amplify<C: Coeff>(p: &MultilinearPoly<C>, d: usize, k: usize) -> Result<(RealPoly, f64)> {
    let (kept, tail) = p.to_real().truncate_tail(d);
    Ok((amplify_with_margin(&kept, k, MAX_MARGIN)?, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_stage_is_symmetric() {
        for i in 0..=100 {
            let y = -0.5 + 2.0 * i as f64 / 100.0;
            assert!((amp_first(1.0 - y) - (1.0 - amp_first(y))).abs() < 1e-12);
        }
    }

    #[test]
    fn endpoints_converge() {
        assert!(amplify_value(0.0, 6).abs() < 1e-6);
        assert!((amplify_value(1.0, 6) - 1.0).abs() < 1e-6);
        assert_eq!(amp_h(0.0), 0.0);
        assert_eq!(amp_h(1.0), 1.0);
    }

    #[test]
    fn rejects_middle_values() {
        let p = RealPoly::constant(2, 0.5);
        assert!(matches!(amplify(&p, 1), Err(Error::AmplifyPrecondition { .. })));
        assert!(amplify_with_margin(&p, 1, 0.6).is_err());
    }
}
