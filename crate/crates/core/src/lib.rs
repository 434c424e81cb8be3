// SPDX-License-Identifier: Apache-2.0

//! Polynomial complexity measures of Boolean functions and the adaptive
//! random-restriction samplers that certify them.
//!
//! Inputs and variable subsets are `u32` bit sets: bit `i` is `x_{i+1}`.
//! Tables are limited to [`MAX_VARS`] variables.

pub mod approx;
pub mod bits;
pub mod boolfun;
pub mod coeff;
pub mod dtree;
pub mod error;
pub mod genpoly;
pub mod harness;
pub mod io;
pub mod maxdeg;
pub mod maxsens;
pub mod poly;
pub mod restriction;
pub mod stats;
pub mod table;

/// Largest supported variable count for tables and polynomials.
pub const MAX_VARS: usize = 24;

pub use coeff::{Coeff, CoeffKind};
pub use error::{Error, Result};
pub use genpoly::{GenMonomial, GenPoly};
pub use poly::{mobius_from_table, table_from_poly, IntPoly, Measures, MultilinearPoly, RealPoly};
pub use restriction::{Assign, Restriction};
pub use table::{TruthTable, ValueKind};
