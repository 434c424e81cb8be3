// SPDX-License-Identifier: Apache-2.0

//! Bit-set helpers. A subset of `[n]` is a `u32` whose bit `i` marks variable
//! `x_{i+1}`; an input `x ∈ {0,1}^n` uses the same encoding.

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn popcount(x: u32) -> usize {
    x.count_ones() as usize
}

/// Iterates over the indices of set bits, lowest first.
pub fn ones(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// Packs the bits of `x` found at positions of `mask` into the low bits.
pub fn compact(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    for (k, i) in ones(mask).enumerate() {
        if x >> i & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

/// Inverse of [`compact`]: spreads the low bits of `y` onto the positions of `mask`.
pub fn expand(y: u32, mask: u32) -> u32 {
    let mut out = 0;
    for (k, i) in ones(mask).enumerate() {
        if y >> k & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

/// Iterates over all submasks of `mask`, including 0 and `mask` itself.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// Renders an input as a bit string, `x_1` first.
pub fn to_bitstring(x: u32, n: usize) -> String {
    (0..n).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a bit string written `x_1` first.
pub fn from_bitstring(s: &str) -> Option<(u32, usize)> {
    let s = s.trim();
    if s.is_empty() || s.len() > 32 {
        return None;
    }
    let mut x = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => x |= 1 << i,
            _ => return None,
        }
    }
    Some((x, s.len()))
}
