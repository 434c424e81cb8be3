// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use crate::bits::full_mask;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::restriction::Restriction;
use crate::table::TruthTable;

/// `g(y) = f(z with block B_i set to y_i)` on `k = blocks.len()` variables.
pub fn identify_blocks<C: Coeff>(f: &TruthTable<C>, z: u32, blocks: &[u32]) -> Result<TruthTable<C>> {
    if blocks.is_empty() {
        return Err(Error::InvalidBlocks);
    }
    let mut seen = 0u32;
    for &b in blocks {
        if b == 0 || b & seen != 0 || b & z != 0 || b & !full_mask(f.n()) != 0 {
            return Err(Error::InvalidBlocks);
        }
        seen |= b;
    }
    TruthTable::from_fn(blocks.len(), |y| {
        let x = blocks
            .iter()
            .enumerate()
            .filter(|(k, _)| y >> k & 1 == 1)
            .fold(z, |acc, (_, &b)| acc | b);
        f.get(x)
    })
}

/// Each of the `k` variables is set to 0 or left free with probability 1/2.
pub fn independent_zero_restriction<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Restriction> {
    let domain = full_mask(k);
    let mut zeros = 0u32;
    for i in 0..k {
        if rng.gen::<bool>() {
            zeros |= 1 << i;
        }
    }
    Restriction::free(k, domain)?;
    Ok(Restriction::from_masks(k, domain, 0, zeros))
}
