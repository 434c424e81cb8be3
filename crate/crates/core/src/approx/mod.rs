// SPDX-License-Identifier: Apache-2.0

//! Explicit approximators and pointwise error evaluation.

mod amplify;
mod chebyshev;
mod sparsify;
mod thr;

pub use amplify::{
    amp_first, amp_h, amplify, amplify_value, amplify_with_margin, truncate_then_amplify, DEFAULT_MARGIN, MAX_MARGIN,
};
pub use chebyshev::{
    chebyshev_coeffs, chebyshev_degree, chebyshev_eval, chebyshev_or_approximator, coefficient_bound_holds,
    SymmetricPoly, CHEBYSHEV_MAX_N,
};
pub use sparsify::{predicted_deviation, sparsify_by_sampling};
pub use thr::{
    collection_sum, default_collection_size, min_separation, thr_approximator, verify_thr_approximator,
    SeparatingCollection, ThrApproximator, ThrCheck, DEFAULT_SAMPLING_BUDGET,
};

use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::table::TruthTable;

/// `max_x |P(x) − f(x)|` over all of `{0,1}^n`.
pub fn max_error<C: Coeff, D: Coeff>(p: &MultilinearPoly<C>, f: &TruthTable<D>) -> Result<f64> {
    if p.n() != f.n() {
        return Err(Error::DimensionMismatch(p.n(), f.n()));
    }
    let values = p.to_real().to_table()?;
    Ok(values
        .values()
        .par_iter()
        .zip(f.values().par_iter())
        .map(|(a, b)| (a - b.to_f64()).abs())
        .reduce(|| 0.0, f64::max))
}
