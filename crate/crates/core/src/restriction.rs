// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::MAX_VARS;

/// Value assigned to one variable by a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assign {
    Zero,
    One,
    Star,
}

impl Assign {
    pub fn from_bit(b: bool) -> Self {
        if b {
            Assign::One
        } else {
            Assign::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Assign::Zero => '0',
            Assign::One => '1',
            Assign::Star => '*',
        }
    }
}

/// A partial assignment `ρ : V → {0, 1, *}` over a domain `V ⊆ [n]`.
///
/// Stored as three disjoint masks; variables outside `domain` are untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Restriction {
    n: usize,
    domain: u32,
    ones: u32,
    zeros: u32,
}

impl Restriction {
    /// Restriction over `domain` leaving every variable free.
    pub fn free(n: usize, domain: u32) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        if domain & !full_mask(n) != 0 {
            return Err(Error::VariableOutOfRange { index: 31 - domain.leading_zeros() as usize, n });
        }
        Ok(Restriction { n, domain, ones: 0, zeros: 0 })
    }

    /// Full-domain restriction from a per-variable list.
    pub fn from_assignments(assign: &[Assign]) -> Result<Self> {
        let n = assign.len();
        let mut rho = Restriction::free(n, full_mask(n))?;
        for (i, &a) in assign.iter().enumerate() {
            rho.set(i, a)?;
        }
        Ok(rho)
    }

    /// Parses a string over `{0,1,*}`, `x_1` first.
    pub fn parse(s: &str) -> Result<Self> {
        let assign = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(Assign::Zero),
                '1' => Ok(Assign::One),
                '*' => Ok(Assign::Star),
                _ => Err(Error::Parse(format!("bad restriction symbol `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_assignments(&assign)
    }

    pub(crate) fn from_masks(n: usize, domain: u32, ones: u32, zeros: u32) -> Self {
        debug_assert_eq!(ones & zeros, 0);
        debug_assert_eq!((ones | zeros) & !domain, 0);
        Restriction { n, domain, ones, zeros }
    }

    /// Assigns variable `i`, adding it to the domain if needed.
    pub fn set(&mut self, i: usize, a: Assign) -> Result<()> {
        if i >= self.n {
            return Err(Error::VariableOutOfRange { index: i, n: self.n });
        }
        let b = 1u32 << i;
        self.domain |= b;
        self.ones &= !b;
        self.zeros &= !b;
        match a {
            Assign::Zero => self.zeros |= b,
            Assign::One => self.ones |= b,
            Assign::Star => {}
        }
        Ok(())
    }

    pub fn get(&self, i: usize) -> Option<Assign> {
        let b = 1u32 << i;
        if i >= self.n || self.domain & b == 0 {
            None
        } else if self.ones & b != 0 {
            Some(Assign::One)
        } else if self.zeros & b != 0 {
            Some(Assign::Zero)
        } else {
            Some(Assign::Star)
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn domain(&self) -> u32 {
        self.domain
    }
    #[inline]
    pub fn ones(&self) -> u32 {
        self.ones
    }
    #[inline]
    pub fn zeros(&self) -> u32 {
        self.zeros
    }
    #[inline]
    pub fn set_vars(&self) -> u32 {
        self.ones | self.zeros
    }
    #[inline]
    pub fn free_vars(&self) -> u32 {
        self.domain & !(self.ones | self.zeros)
    }
    /// `|ρ|`, the number of free variables.
    #[inline]
    pub fn free_count(&self) -> usize {
        self.free_vars().count_ones() as usize
    }

    /// Completes `y` (read on the unset variables) with the fixed values of `ρ`.
    #[inline]
    pub fn extend(&self, y: u32) -> u32 {
        (y & !self.set_vars()) | self.ones
    }

    /// Whether `w` agrees with `ρ` on every set variable.
    #[inline]
    pub fn is_consistent(&self, w: u32) -> bool {
        w & self.set_vars() == self.ones
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let c = self.get(i).map_or('.', Assign::symbol);
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
