// SPDX-License-Identifier: Apache-2.0

//! Monotone block sensitivity: disjoint all-zero blocks whose flip to 1 changes `f`.

use crate::bits::{expand, full_mask};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::table::TruthTable;

/// Largest `n` accepted by the exact search.
pub const MBS_EXACT_LIMIT: usize = 14;

/// Minimal sensitive 0-blocks of `f` at `x`.
fn minimal_blocks<C: Coeff>(f: &TruthTable<C>, x: u32) -> Vec<u32> {
    let zeros = full_mask(f.n()) & !x;
    let k = zeros.count_ones() as usize;
    let fx = f.get(x);
    // below[y]: some nonempty proper sub-block of y (in compacted coordinates) is sensitive.
    let size = 1usize << k;
    let mut sens = vec![false; size];
    let mut below = vec![false; size];
    let mut out = Vec::new();
    for y in 1..size as u32 {
        let b = expand(y, zeros);
        sens[y as usize] = f.get(x | b) != fx;
        let mut t = y;
        let mut any = false;
        while t != 0 {
            let low = t & t.wrapping_neg();
            t ^= low;
            let sub = (y ^ low) as usize;
            if sub != 0 && (sens[sub] || below[sub]) {
                any = true;
                break;
            }
        }
        below[y as usize] = any;
        if sens[y as usize] && !any {
            out.push(b);
        }
    }
    out
}

/// Maximum number of pairwise disjoint sets among `blocks`.
fn max_packing(blocks: &[u32]) -> usize {
    if blocks.is_empty() {
        return 0;
    }
    let universe = blocks.iter().fold(0, |a, &b| a | b);
    let min_size = blocks.iter().map(|b| b.count_ones()).min().unwrap_or(1).max(1);
    let mut best = 0;
    pack(blocks, universe, 0, min_size, &mut best);
    best
}

/// Branch on the lowest element of `avail`: either some block containing it
/// is used, or the element is discarded.
fn pack(blocks: &[u32], avail: u32, used: usize, min_size: u32, best: &mut usize) {
    if used > *best {
        *best = used;
    }
    if avail == 0 || used + (avail.count_ones() / min_size) as usize <= *best {
        return;
    }
    let e = avail & avail.wrapping_neg();
    for &b in blocks {
        if b & e != 0 && b & !avail == 0 {
            pack(blocks, avail & !b, used + 1, min_size, best);
        }
    }
    pack(blocks, avail & !e, used, min_size, best);
}

/// Exact `MBS(f, x)`.
pub fn mbs_at<C: Coeff>(f: &TruthTable<C>, x: u32) -> usize {
    max_packing(&minimal_blocks(f, x))
}

/// Exact `MBS(f) = max_x MBS(f, x)`; 0 for constant functions.
pub fn mbs<C: Coeff>(f: &TruthTable<C>) -> Result<usize> {
    if f.n() > MBS_EXACT_LIMIT {
        return Err(Error::TooLargeForExact { n: f.n(), limit: MBS_EXACT_LIMIT });
    }
    let mut best = 0;
    for x in 0..f.len() as u32 {
        let zeros = (full_mask(f.n()) & !x).count_ones() as usize;
        // No packing can beat the number of zeros.
        if zeros > best {
            best = best.max(mbs_at(f, x));
        }
    }
    Ok(best)
}

/// Greedy lower bound on `MBS(f)` for any supported `n`. At each input the
/// remaining zeros are shrunk one variable at a time to a sensitive block,
/// which is then removed.
pub fn mbs_greedy<C: Coeff>(f: &TruthTable<C>) -> usize {
    let mask = full_mask(f.n());
    let mut best = 0;
    for x in 0..f.len() as u32 {
        let fx = f.get(x);
        let mut avail = mask & !x;
        let mut count = 0;
        while avail != 0 && f.get(x | avail) != fx {
            let mut block = avail;
            for i in 0..f.n() {
                let b = 1u32 << i;
                if block & b != 0 && block != b && f.get(x | (block & !b)) != fx {
                    block &= !b;
                }
            }
            avail &= !block;
            count += 1;
        }
        best = best.max(count);
    }
    best
}
