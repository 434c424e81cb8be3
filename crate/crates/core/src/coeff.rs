// SPDX-License-Identifier: Apache-2.0

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Which scalar type backs a polynomial or table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Int,
    Real,
}

/// Relative tolerance used by float-mode threshold comparisons.
pub const REAL_THRESHOLD_TOL: f64 = 1e-9;

/// Scalar used for coefficients and table values: exact `i64` or `f64`.
pub trait Coeff:
    Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const ZERO: Self;
    const ONE: Self;
    const KIND: CoeffKind;

    fn is_zero(self) -> bool;
    fn abs(self) -> Self;
    fn to_f64(self) -> f64;
    fn from_i64(v: i64) -> Self;

    /// `part >= (num/den) * whole`. Exact for integers; for floats the
    /// comparison is relaxed by `REAL_THRESHOLD_TOL * whole`.
    fn at_least_fraction(part: Self, whole: Self, num: u64, den: u64) -> bool;
}

impl Coeff for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    const KIND: CoeffKind = CoeffKind::Int;

    #[inline]
    fn is_zero(self) -> bool {
        self == 0
    }
    #[inline]
    fn abs(self) -> Self {
        i64::abs(self)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }
    #[inline]
    fn at_least_fraction(part: Self, whole: Self, num: u64, den: u64) -> bool {
        part as i128 * den as i128 >= whole as i128 * num as i128
    }
}

impl Coeff for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const KIND: CoeffKind = CoeffKind::Real;

    #[inline]
    fn is_zero(self) -> bool {
        self == 0.0
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    #[inline]
    fn at_least_fraction(part: Self, whole: Self, num: u64, den: u64) -> bool {
        part * den as f64 >= whole * num as f64 - REAL_THRESHOLD_TOL * whole * den as f64
    }
}
