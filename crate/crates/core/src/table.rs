// SPDX-License-Identifier: Apache-2.0

//! Functions on `{0,1}^n` stored as full value tables.

use serde::{Deserialize, Serialize};

use crate::bits::{expand, full_mask};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::restriction::Restriction;
use crate::MAX_VARS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Boolean,
    Integer,
    Real,
}

/// A function on `{0,1}^n`; `values[x]` is `f(x)` with bit `i` of `x` equal to `x_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable<C: Coeff = i64> {
    n: usize,
    values: Vec<C>,
    kind: ValueKind,
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        Err(Error::VarCountOutOfRange(n))
    } else {
        Ok(())
    }
}

impl<C: Coeff> TruthTable<C> {
    pub fn new(n: usize, values: Vec<C>) -> Result<Self> {
        check_n(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength { n, expected, got: values.len() });
        }
        let kind = Self::classify(&values);
        Ok(TruthTable { n, values, kind })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> C) -> Result<Self> {
        check_n(n)?;
        let values = (0..1u32 << n).map(&mut f).collect();
        Self::new(n, values)
    }

    fn classify(values: &[C]) -> ValueKind {
        if values.iter().all(|&v| v == C::ZERO || v == C::ONE) {
            ValueKind::Boolean
        } else if values.iter().all(|&v| v.to_f64().fract() == 0.0) {
            ValueKind::Integer
        } else {
            ValueKind::Real
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: u32) -> C {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C> {
        self.values
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    pub fn is_boolean(&self) -> bool {
        self.kind == ValueKind::Boolean
    }

    pub fn require_boolean(&self) -> Result<()> {
        match self.values.iter().position(|&v| v != C::ZERO && v != C::ONE) {
            None => Ok(()),
            Some(x) => Err(Error::NotBoolean { input: x as u32, value: self.values[x].to_string() }),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn to_real(&self) -> TruthTable<f64> {
        TruthTable {
            n: self.n,
            values: self.values.iter().map(|v| v.to_f64()).collect(),
            kind: self.kind,
        }
    }

    /// `f|ρ` as a table over the free variables (and any variables outside
    /// the restriction domain), renumbered in increasing order.
    pub fn restrict(&self, rho: &Restriction) -> Result<TruthTable<C>> {
        if rho.n() != self.n {
            return Err(Error::DimensionMismatch(rho.n(), self.n));
        }
        let keep = full_mask(self.n) & !rho.set_vars();
        let k = keep.count_ones() as usize;
        let base = rho.ones();
        let values: Vec<C> = (0..1u32 << k).map(|y| self.get(base | expand(y, keep))).collect();
        if k == 0 {
            // A fully fixed function is reported as a 1-variable constant table.
            return TruthTable::new(1, vec![values[0], values[0]]);
        }
        TruthTable::new(k, values)
    }
}

impl TruthTable<i64> {
    /// Boolean table from a predicate.
    pub fn from_predicate(n: usize, mut p: impl FnMut(u32) -> bool) -> Result<Self> {
        Self::from_fn(n, |x| p(x) as i64)
    }

    #[inline]
    pub fn bit(&self, x: u32) -> bool {
        self.values[x as usize] != 0
    }
}
