// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::bits::full_mask;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::table::TruthTable;

/// Critical inputs of a monotone function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalInputs {
    /// `1_{[n]∖S}` for every maxterm `S`, in increasing order.
    pub m0: Vec<u32>,
    /// `1_S` for every minterm `S`, in increasing order.
    pub m1: Vec<u32>,
}

impl CriticalInputs {
    /// `M(f) = |M0| + |M1|`.
    pub fn total(&self) -> usize {
        self.m0.len() + self.m1.len()
    }

    /// `M0 ∪ M1` in increasing order.
    pub fn both(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.m0.iter().chain(&self.m1).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Checks `f(x) ≤ f(x ∪ {i})` on every covering pair.
pub fn is_monotone<C: Coeff>(f: &TruthTable<C>) -> Result<()> {
    for i in 0..f.n() {
        let b = 1u32 << i;
        for x in 0..f.len() as u32 {
            if x & b == 0 && f.get(x) > f.get(x | b) {
                return Err(Error::NotMonotone { lo: x, hi: x | b });
            }
        }
    }
    Ok(())
}

/// Exact `M0(f)` and `M1(f)` for a monotone Boolean `f`.
pub fn critical_inputs(f: &TruthTable) -> Result<CriticalInputs> {
    f.require_boolean()?;
    is_monotone(f)?;
    let n = f.n();
    let full = full_mask(n);
    let mut m0 = Vec::new();
    let mut m1 = Vec::new();
    for x in 0..f.len() as u32 {
        // A 1-input is critical when every 1 is needed; a 0-input when every 0 is.
        if f.bit(x) {
            if (0..n).all(|i| x >> i & 1 == 0 || !f.bit(x & !(1 << i))) {
                m1.push(x);
            }
        } else if (0..n).all(|i| x >> i & 1 == 1 || f.bit(x | 1 << i)) {
            m0.push(x);
        }
    }
    debug_assert!(m0.iter().all(|&x| x & !full == 0));
    Ok(CriticalInputs { m0, m1 })
}
