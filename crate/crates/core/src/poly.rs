// SPDX-License-Identifier: Apache-2.0

//! Multilinear polynomials in the De Morgan (monotone AND) basis.
//!
//! A polynomial is a sparse map `S ↦ a_S` from variable subsets to nonzero
//! coefficients, kept sorted by subset mask. Subsets use the same bit
//! encoding as table inputs, so `P(x) = Σ_{S ⊆ x} a_S`.
//!
//! Integer coefficients (`i64`) represent Boolean or integer tables exactly;
//! `f64` coefficients are used for approximators.

use serde::{Deserialize, Serialize};

use crate::bits::full_mask;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::restriction::Restriction;
use crate::table::{check_n, TruthTable};
use crate::MAX_VARS;

#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPoly<C: Coeff = i64> {
    n: usize,
    terms: Vec<(u32, C)>,
}

pub type IntPoly = MultilinearPoly<i64>;
pub type RealPoly = MultilinearPoly<f64>;

/// Degree, sparsity and ℓ1-norm of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measures {
    pub deg: usize,
    pub spar: usize,
    pub l1: f64,
    pub is_zero: bool,
}

/// Sorts by mask, sums duplicates and drops zero coefficients.
fn normalize<C: Coeff>(terms: &mut Vec<(u32, C)>) {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u32, C)> = Vec::with_capacity(terms.len());
    for &(s, c) in terms.iter() {
        match out.last_mut() {
            Some(last) if last.0 == s => last.1 += c,
            _ => out.push((s, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    *terms = out;
}

impl<C: Coeff> MultilinearPoly<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        MultilinearPoly { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn monomial(n: usize, vars: u32, c: C) -> Self {
        assert!(n <= MAX_VARS && vars & !full_mask(n) == 0);
        let terms = if c.is_zero() { vec![] } else { vec![(vars, c)] };
        MultilinearPoly { n, terms }
    }

    /// Builds a polynomial, merging repeated subsets.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, C)>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        let mask = full_mask(n);
        let mut terms: Vec<(u32, C)> = terms.into_iter().collect();
        if let Some(&(s, _)) = terms.iter().find(|t| t.0 & !mask != 0) {
            return Err(Error::VariableOutOfRange { index: 31 - s.leading_zeros() as usize, n });
        }
        normalize(&mut terms);
        Ok(MultilinearPoly { n, terms })
    }

    /// Caller guarantees the masks are within `[n]`.
    pub(crate) fn from_terms_unchecked(n: usize, mut terms: Vec<(u32, C)>) -> Self {
        normalize(&mut terms);
        MultilinearPoly { n, terms }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero terms in increasing mask order.
    #[inline]
    pub fn terms(&self) -> &[(u32, C)] {
        &self.terms
    }

    pub fn coeff(&self, s: u32) -> C {
        match self.terms.binary_search_by_key(&s, |t| t.0) {
            Ok(k) => self.terms[k].1,
            Err(_) => C::ZERO,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum term size; 0 for the zero polynomial (see [`is_zero`](Self::is_zero)).
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.0.count_ones() as usize).max().unwrap_or(0)
    }

    #[inline]
    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    pub fn l1(&self) -> C {
        self.terms.iter().fold(C::ZERO, |acc, t| acc + t.1.abs())
    }

    /// `Σ_{|S| ≥ d} |a_S|`.
    pub fn l1_geq(&self, d: usize) -> C {
        self.terms
            .iter()
            .filter(|t| t.0.count_ones() as usize >= d)
            .fold(C::ZERO, |acc, t| acc + t.1.abs())
    }

    /// `Vars(Q)`: union of all term supports.
    pub fn vars(&self) -> u32 {
        self.terms.iter().fold(0, |acc, t| acc | t.0)
    }

    pub fn measures(&self) -> Measures {
        Measures {
            deg: self.degree(),
            spar: self.sparsity(),
            l1: self.l1().to_f64(),
            is_zero: self.is_zero(),
        }
    }

    /// `P(x) = Σ_{S ⊆ x} a_S`.
    pub fn eval(&self, x: u32) -> C {
        self.terms
            .iter()
            .filter(|t| t.0 & !x == 0)
            .fold(C::ZERO, |acc, t| acc + t.1)
    }

    /// `P|ρ`: substitutes every set variable; cancelled terms are removed.
    pub fn restrict(&self, rho: &Restriction) -> Self {
        let zeros = rho.zeros();
        let ones = rho.ones();
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 & zeros == 0)
            .map(|&(s, c)| (s & !ones, c))
            .collect();
        Self::from_terms_unchecked(self.n, terms)
    }

    /// `P|_{x_i = u}`.
    pub fn restrict_var(&self, i: usize, u: bool) -> Self {
        let b = 1u32 << i;
        if u {
            Self::from_terms_unchecked(self.n, self.terms.iter().map(|&(s, c)| (s & !b, c)).collect())
        } else {
            MultilinearPoly {
                n: self.n,
                terms: self.terms.iter().copied().filter(|t| t.0 & b == 0).collect(),
            }
        }
    }

    /// `ℓ1(P|_{x_i = u})` without materializing the restriction.
    pub fn l1_restricted(&self, i: usize, u: bool) -> C {
        let b = 1u32 << i;
        if !u {
            return self
                .terms
                .iter()
                .filter(|t| t.0 & b == 0)
                .fold(C::ZERO, |acc, t| acc + t.1.abs());
        }
        // Terms S and S ∪ {i} merge; every other term keeps its magnitude.
        let mut total = C::ZERO;
        for &(s, c) in &self.terms {
            if s & b == 0 {
                total += (c + self.coeff(s | b)).abs();
            } else if self.coeff(s & !b).is_zero() {
                total += c.abs();
            }
        }
        total
    }

    /// Splits `P = R1 · x_i + R0` with neither part mentioning `x_i`.
    pub fn decompose(&self, i: usize) -> (Self, Self) {
        let b = 1u32 << i;
        let mut r1 = Vec::new();
        let mut r0 = Vec::new();
        for &(s, c) in &self.terms {
            if s & b != 0 {
                r1.push((s & !b, c));
            } else {
                r0.push((s, c));
            }
        }
        // Both halves inherit the sorted order, and removing the same bit
        // from masks that all contain it keeps them sorted and distinct.
        (MultilinearPoly { n: self.n, terms: r1 }, MultilinearPoly { n: self.n, terms: r0 })
    }

    /// `(ℓ1(R1), ℓ1(R0))` for the split on `x_i`.
    pub fn split_l1(&self, i: usize) -> (C, C) {
        let b = 1u32 << i;
        let mut with = C::ZERO;
        let mut without = C::ZERO;
        for &(s, c) in &self.terms {
            if s & b != 0 {
                with += c.abs();
            } else {
                without += c.abs();
            }
        }
        (with, without)
    }

    /// Drops every term with `|S| ≥ d`, returning the kept part and the dropped ℓ1 mass.
    pub fn truncate_tail(&self, d: usize) -> (Self, C) {
        let tail = self.l1_geq(d);
        let kept = self
            .terms
            .iter()
            .copied()
            .filter(|t| (t.0.count_ones() as usize) < d)
            .collect();
        (MultilinearPoly { n: self.n, terms: kept }, tail)
    }

    pub fn scale(&self, k: C) -> Self {
        Self::from_terms_unchecked(self.n, self.terms.iter().map(|&(s, c)| (s, c * k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms_unchecked(self.n, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-C::ONE))
    }

    /// Product reduced by `x_i^2 = x_i`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(s, a) in &self.terms {
            for &(t, b) in &other.terms {
                terms.push((s | t, a * b));
            }
        }
        Self::from_terms_unchecked(self.n, terms)
    }

    pub fn to_real(&self) -> RealPoly {
        MultilinearPoly { n: self.n, terms: self.terms.iter().map(|&(s, c)| (s, c.to_f64())).collect() }
    }

    /// Values on all of `{0,1}^n` via the subset-sum (zeta) transform.
    pub fn to_table(&self) -> Result<TruthTable<C>> {
        check_n(self.n)?;
        let mut values = vec![C::ZERO; 1 << self.n];
        for &(s, c) in &self.terms {
            values[s as usize] = c;
        }
        zeta_in_place(&mut values);
        TruthTable::new(self.n, values)
    }
}

/// `v[x] ← Σ_{S ⊆ x} v[S]`.
pub(crate) fn zeta_in_place<C: Coeff>(v: &mut [C]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b += *a;
            }
        }
        h <<= 1;
    }
}

/// `v[S] ← Σ_{T ⊆ S} (−1)^{|S∖T|} v[T]`.
pub(crate) fn mobius_in_place<C: Coeff>(v: &mut [C]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b -= *a;
            }
        }
        h <<= 1;
    }
}

/// The unique multilinear representation of `f`.
pub fn mobius_from_table<C: Coeff>(f: &TruthTable<C>) -> MultilinearPoly<C> {
    let mut v = f.values().to_vec();
    mobius_in_place(&mut v);
    let terms = v
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (s as u32, c))
        .collect();
    MultilinearPoly { n: f.n(), terms }
}

pub fn table_from_poly<C: Coeff>(p: &MultilinearPoly<C>) -> Result<TruthTable<C>> {
    p.to_table()
}
