// SPDX-License-Identifier: Apache-2.0

//! Generalized polynomials over the literals `x_i` and `x̄_i = 1 − x_i`.

use crate::bits::{full_mask, ones, submasks};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::restriction::Restriction;
use crate::table::TruthTable;
use crate::MAX_VARS;

/// `coeff · ∏_{i∈pos} x_i · ∏_{j∈neg} x̄_j` with `pos ∩ neg = ∅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenMonomial<C: Coeff = f64> {
    pub pos: u32,
    pub neg: u32,
    pub coeff: C,
}

impl<C: Coeff> GenMonomial<C> {
    pub fn new(pos: u32, neg: u32, coeff: C) -> Result<Self> {
        if pos & neg != 0 {
            return Err(Error::OverlappingLiterals { pos, neg });
        }
        Ok(GenMonomial { pos, neg, coeff })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        (self.pos | self.neg).count_ones() as usize
    }

    /// `[P ⊆ x]·[N ∩ x = ∅]`.
    #[inline]
    pub fn is_satisfied(&self, x: u32) -> bool {
        x & self.pos == self.pos && x & self.neg == 0
    }

    /// Whether `ρ` zeroes the monomial (a positive literal at 0 or a negated one at 1).
    #[inline]
    pub fn killed_by(&self, rho: &Restriction) -> bool {
        self.pos & rho.zeros() != 0 || self.neg & rho.ones() != 0
    }

    /// Degree of `M|ρ`, taken as 0 when `ρ` kills `M`.
    pub fn restricted_degree(&self, rho: &Restriction) -> usize {
        if self.killed_by(rho) {
            0
        } else {
            ((self.pos | self.neg) & !rho.set_vars()).count_ones() as usize
        }
    }
}

/// Degree, term count and coefficient ℓ1 of one generalized representation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GenMeasures {
    pub deg: usize,
    pub gspar_ub: usize,
    pub gl1_ub: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenPoly<C: Coeff = f64> {
    n: usize,
    terms: Vec<GenMonomial<C>>,
}

impl<C: Coeff> GenPoly<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        GenPoly { n, terms: Vec::new() }
    }

    /// Builds a representation, merging monomials with identical literal sets.
    pub fn new(n: usize, terms: impl IntoIterator<Item = GenMonomial<C>>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        let mask = full_mask(n);
        let mut v: Vec<GenMonomial<C>> = Vec::new();
        for m in terms {
            if m.pos & m.neg != 0 {
                return Err(Error::OverlappingLiterals { pos: m.pos, neg: m.neg });
            }
            let all = m.pos | m.neg;
            if all & !mask != 0 {
                return Err(Error::VariableOutOfRange { index: 31 - all.leading_zeros() as usize, n });
            }
            v.push(m);
        }
        Ok(Self::normalized(n, v))
    }

    fn normalized(n: usize, mut v: Vec<GenMonomial<C>>) -> Self {
        v.sort_by_key(|m| (m.pos, m.neg));
        let mut out: Vec<GenMonomial<C>> = Vec::with_capacity(v.len());
        for m in v {
            match out.last_mut() {
                Some(last) if last.pos == m.pos && last.neg == m.neg => last.coeff += m.coeff,
                _ => out.push(m),
            }
        }
        out.retain(|m| !m.coeff.is_zero());
        GenPoly { n, terms: out }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[GenMonomial<C>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: u32) -> C {
        self.terms
            .iter()
            .filter(|m| m.is_satisfied(x))
            .fold(C::ZERO, |acc, m| acc + m.coeff)
    }

    pub fn measures(&self) -> GenMeasures {
        GenMeasures {
            deg: self.terms.iter().map(GenMonomial::degree).max().unwrap_or(0),
            gspar_ub: self.terms.len(),
            gl1_ub: self.terms.iter().map(|m| m.coeff.abs().to_f64()).sum(),
        }
    }

    /// Replaces every `x̄_j` by `1 − x_j` and collects terms.
    pub fn expand_to_standard(&self) -> MultilinearPoly<C> {
        let mut out = Vec::new();
        for m in &self.terms {
            for t in submasks(m.neg) {
                let sign = if t.count_ones() % 2 == 0 { C::ONE } else { -C::ONE };
                out.push((m.pos | t, sign * m.coeff));
            }
        }
        MultilinearPoly::from_terms_unchecked(self.n, out)
    }

    pub fn restrict(&self, rho: &Restriction) -> Self {
        let set = rho.set_vars();
        let v = self
            .terms
            .iter()
            .filter(|m| !m.killed_by(rho))
            .map(|m| GenMonomial { pos: m.pos & !set, neg: m.neg & !set, coeff: m.coeff })
            .collect();
        Self::normalized(self.n, v)
    }

    pub fn scale(&self, k: C) -> Self {
        let v = self.terms.iter().map(|m| GenMonomial { coeff: m.coeff * k, ..*m }).collect();
        Self::normalized(self.n, v)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut v = self.terms.clone();
        v.extend_from_slice(&other.terms);
        Self::normalized(self.n, v)
    }

    pub fn to_real(&self) -> GenPoly<f64> {
        GenPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|m| GenMonomial { pos: m.pos, neg: m.neg, coeff: m.coeff.to_f64() })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<TruthTable<C>> {
        self.expand_to_standard().to_table()
    }

    /// `max_x |G(x) − f(x)|`.
    pub fn max_error<D: Coeff>(&self, f: &TruthTable<D>) -> Result<f64> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, f.n()));
        }
        let g = self.to_real().to_table()?;
        Ok(g.values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b.to_f64()).abs())
            .fold(0.0, f64::max))
    }
}

impl<C: Coeff> std::fmt::Display for GenPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", m.coeff)?;
            for i in ones(m.pos) {
                write!(f, "·x{}", i + 1)?;
            }
            for i in ones(m.neg) {
                write!(f, "·!x{}", i + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(pos: u32, neg: u32, c: i64) -> GenMonomial<i64> {
        GenMonomial::new(pos, neg, c).unwrap()
    }

    #[test]
    fn or_two_term_form() {
        let g = GenPoly::new(3, [gm(0, 0, 1), gm(0, 0b111, -1)]).unwrap();
        assert_eq!(g.eval(0), 0);
        for x in 1..8 {
            assert_eq!(g.eval(x), 1);
        }
        assert_eq!(g.measures().gspar_ub, 2);
    }

    #[test]
    fn expansion_examples() {
        let g = GenPoly::new(2, [gm(0, 0, 1), gm(0, 0b11, -1)]).unwrap();
        assert_eq!(g.expand_to_standard().terms(), &[(0b01, 1), (0b10, 1), (0b11, -1)]);
        let g = GenPoly::new(1, [gm(0, 1, 1)]).unwrap();
        assert_eq!(g.expand_to_standard().terms(), &[(0, 1), (1, -1)]);
    }

    #[test]
    fn restrict_examples() {
        let g = GenPoly::new(2, [gm(0b01, 0b10, 1)]).unwrap();
        let r = g.restrict(&Restriction::parse("1*").unwrap());
        assert_eq!(r.terms(), &[gm(0, 0b10, 1)]);
        let r = g.restrict(&Restriction::parse("*1").unwrap());
        assert!(r.is_zero());
    }

    #[test]
    fn rejects_overlap() {
        assert!(GenMonomial::new(0b1, 0b1, 1i64).is_err());
    }

    #[test]
    fn max_error_examples() {
        let or3 = TruthTable::from_predicate(3, |x| x != 0).unwrap();
        let g = GenPoly::new(3, [gm(0, 0, 1), gm(0, 0b111, -1)]).unwrap();
        assert_eq!(g.max_error(&or3).unwrap(), 0.0);
        assert_eq!(GenPoly::<i64>::zero(3).max_error(&or3).unwrap(), 1.0);
    }
}
