// SPDX-License-Identifier: Apache-2.0

//! Named Boolean functions and combinatorial measures on truth tables.

mod blocks;
mod critical;
mod mbs;
mod sensitivity;
mod separating;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use blocks::{identify_blocks, independent_zero_restriction};
pub use critical::{critical_inputs, is_monotone, CriticalInputs};
pub use mbs::{mbs, mbs_at, mbs_greedy, MBS_EXACT_LIMIT};
pub use sensitivity::{sensitive_set, sensitivity, sensitivity_profile};
pub use separating::{dense_sensitive_subset, find_violation, is_separating, restrict_set};

use crate::bits::{full_mask, popcount};
use crate::error::{Error, Result};
use crate::genpoly::{GenMonomial, GenPoly};
use crate::table::TruthTable;
use crate::MAX_VARS;

/// Function families known to the zoo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Or(usize),
    And(usize),
    Parity(usize),
    /// `Thr^n_{n−1}`: 1 iff the input has at most one zero.
    Thr(usize),
    /// `AND_n ∘ OR_2` on `2n` variables; block `k` is `(x_{2k+1}, x_{2k+2})`.
    AndOr2(usize),
    /// Sink on `m` vertices over `C(m,2)` edge variables.
    Sink(usize),
    /// `f_mixed(x, y)` with `|x| = 2` and `|y| = n`.
    FMixed(usize),
    /// 1 iff strictly more than half the inputs are 1.
    Majority(usize),
    File(PathBuf),
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownFunction(s.to_string());
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        if name == "file" {
            return Ok(FunctionSpec::File(PathBuf::from(arg)));
        }
        let k: usize = arg.parse().map_err(|_| bad())?;
        let spec = match name {
            "or" => FunctionSpec::Or(k),
            "and" => FunctionSpec::And(k),
            "parity" => FunctionSpec::Parity(k),
            "thr" => FunctionSpec::Thr(k),
            "and-or2" => FunctionSpec::AndOr2(k),
            "sink" => FunctionSpec::Sink(k),
            "fmixed" => FunctionSpec::FMixed(k),
            "majority" => FunctionSpec::Majority(k),
            _ => return Err(bad()),
        };
        let n = spec.var_count().ok_or_else(bad)?;
        if n == 0 || n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        Ok(spec)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Or(k) => write!(f, "or:{k}"),
            FunctionSpec::And(k) => write!(f, "and:{k}"),
            FunctionSpec::Parity(k) => write!(f, "parity:{k}"),
            FunctionSpec::Thr(k) => write!(f, "thr:{k}"),
            FunctionSpec::AndOr2(k) => write!(f, "and-or2:{k}"),
            FunctionSpec::Sink(k) => write!(f, "sink:{k}"),
            FunctionSpec::FMixed(k) => write!(f, "fmixed:{k}"),
            FunctionSpec::Majority(k) => write!(f, "majority:{k}"),
            FunctionSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Index of the edge variable for vertices `i < j` among `m` vertices.
pub fn sink_edge_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Whether vertex `v` is a sink: every edge at `v` points toward it.
/// Edge bit 1 orients `(i, j)` toward the smaller vertex `i`.
fn sink_at(m: usize, x: u32, v: usize) -> bool {
    (0..m).filter(|&u| u != v).all(|u| {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        let toward_smaller = x >> sink_edge_index(m, i, j) & 1 == 1;
        toward_smaller == (v == i)
    })
}

impl FunctionSpec {
    /// Number of variables, or `None` for file-backed functions.
    pub fn var_count(&self) -> Option<usize> {
        Some(match *self {
            FunctionSpec::Or(k)
            | FunctionSpec::And(k)
            | FunctionSpec::Parity(k)
            | FunctionSpec::Thr(k)
            | FunctionSpec::Majority(k) => k,
            FunctionSpec::AndOr2(k) => 2 * k,
            FunctionSpec::Sink(m) => m * m.saturating_sub(1) / 2,
            FunctionSpec::FMixed(k) => k + 2,
            FunctionSpec::File(_) => return None,
        })
    }

    /// Evaluates the defining predicate. Not available for file-backed functions.
    pub fn predicate(&self, x: u32) -> bool {
        match *self {
            FunctionSpec::Or(_) => x != 0,
            FunctionSpec::And(k) => x == full_mask(k),
            FunctionSpec::Parity(_) => popcount(x) % 2 == 1,
            FunctionSpec::Thr(k) => popcount(x) + 1 >= k,
            FunctionSpec::Majority(k) => 2 * popcount(x) > k,
            FunctionSpec::AndOr2(k) => (0..k).all(|b| x >> (2 * b) & 0b11 != 0),
            FunctionSpec::Sink(m) => (0..m).any(|v| sink_at(m, x, v)),
            FunctionSpec::FMixed(k) => {
                let y = x >> 2;
                match x & 0b11 {
                    0b00 => false,
                    0b11 => true,
                    0b01 => y != 0,
                    _ => y == full_mask(k),
                }
            }
            FunctionSpec::File(_) => panic!("file-backed functions have no predicate"),
        }
    }

    pub fn table(&self) -> Result<TruthTable> {
        if let FunctionSpec::File(p) = self {
            return crate::io::read_table_file(p);
        }
        let n = self.var_count().expect("non-file spec");
        TruthTable::from_predicate(n, |x| self.predicate(x))
    }

    /// An explicit generalized representation, where the family has a short one.
    pub fn genpoly(&self) -> Option<GenPoly<i64>> {
        let n = self.var_count()?;
        let m = |pos, neg, c| GenMonomial { pos, neg, coeff: c };
        let terms = match *self {
            FunctionSpec::Or(k) => vec![m(0, 0, 1), m(0, full_mask(k), -1)],
            FunctionSpec::And(k) => vec![m(full_mask(k), 0, 1)],
            FunctionSpec::Sink(v) => (0..v).map(|s| sink_monomial(v, s)).collect(),
            FunctionSpec::FMixed(_) => {
                let y = full_mask(n) & !0b11;
                vec![
                    m(0b11, 0, 1),
                    m(0b01, 0b10, 1),
                    m(0b01, 0b10 | y, -1),
                    m(0b10 | y, 0b01, 1),
                ]
            }
            _ => return None,
        };
        GenPoly::new(n, terms).ok()
    }
}

/// The monomial that is 1 exactly when vertex `v` is the sink.
fn sink_monomial(m: usize, v: usize) -> GenMonomial<i64> {
    let mut pos = 0u32;
    let mut neg = 0u32;
    for j in v + 1..m {
        pos |= 1 << sink_edge_index(m, v, j);
    }
    for i in 0..v {
        neg |= 1 << sink_edge_index(m, i, v);
    }
    GenMonomial { pos, neg, coeff: 1 }
}

/// A zoo function together with its realized table.
#[derive(Debug, Clone)]
pub struct NamedFunction {
    pub spec: FunctionSpec,
    pub table: TruthTable,
}

impl NamedFunction {
    pub fn new(spec: FunctionSpec) -> Result<Self> {
        let table = spec.table()?;
        table.require_boolean()?;
        Ok(NamedFunction { spec, table })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }
}
