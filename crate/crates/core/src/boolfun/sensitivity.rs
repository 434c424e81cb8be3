// SPDX-License-Identifier: Apache-2.0

use crate::bits::full_mask;
use crate::coeff::Coeff;
use crate::table::TruthTable;

/// `S(f, x)`: coordinates whose flip changes `f(x)`.
pub fn sensitive_set<C: Coeff>(f: &TruthTable<C>, x: u32) -> u32 {
    let v = f.get(x);
    (0..f.n()).filter(|&i| f.get(x ^ (1 << i)) != v).fold(0, |s, i| s | 1 << i)
}

/// `S(f, x)` for every input.
pub fn sensitivity_profile<C: Coeff>(f: &TruthTable<C>) -> Vec<u32> {
    let mut out = vec![0u32; f.len()];
    for i in 0..f.n() {
        let b = 1u32 << i;
        for x in 0..f.len() as u32 {
            if x & b == 0 && f.get(x) != f.get(x | b) {
                out[x as usize] |= b;
                out[(x | b) as usize] |= b;
            }
        }
    }
    debug_assert!(out.iter().all(|&s| s & !full_mask(f.n()) == 0));
    out
}

/// `s(f) = max_x |S(f, x)|`.
pub fn sensitivity<C: Coeff>(f: &TruthTable<C>) -> usize {
    sensitivity_profile(f).into_iter().map(|s| s.count_ones() as usize).max().unwrap_or(0)
}
