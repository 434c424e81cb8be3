// SPDX-License-Identifier: Apache-2.0

//! File formats. Variable indices in JSON are 1-based; bit strings list `x_1` first.
//!
//! * polynomial: `{"n", "coeff_kind": "int"|"real", "terms": [{"vars", "coeff"}]}`
//! * generalized polynomial: `{"n", "terms": [{"pos", "neg", "coeff"}]}`
//! * decision tree: `{"n", "nodes": [{"var", "lo", "hi"} | {"leaf"}], "root"}`
//! * truth table: a line `n=<k>` followed by `2^k` characters `0`/`1`, or by
//!   `2^k` whitespace-separated numbers; entry `i` is the value at input `i`
//! * input set: one bit string per line

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::{from_bitstring, ones, to_bitstring};
use crate::coeff::{Coeff, CoeffKind};
use crate::dtree::{DecisionTree, Node};
use crate::error::{Error, Result};
use crate::genpoly::{GenMonomial, GenPoly};
use crate::poly::MultilinearPoly;
use crate::table::TruthTable;
use crate::MAX_VARS;

fn vars_to_mask(vars: &[usize], n: usize) -> Result<u32> {
    let mut m = 0u32;
    for &v in vars {
        if v == 0 || v > n {
            return Err(Error::VariableOutOfRange { index: v, n });
        }
        m |= 1 << (v - 1);
    }
    Ok(m)
}

fn mask_to_vars(m: u32) -> Vec<usize> {
    ones(m).map(|i| i + 1).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub vars: Vec<usize>,
    pub coeff: serde_json::Number,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub coeff_kind: CoeffKind,
    pub terms: Vec<PolyTermJson>,
}

fn number_from_f64(c: f64) -> Result<serde_json::Number> {
    serde_json::Number::from_f64(c).ok_or_else(|| Error::Parse(format!("non-finite coefficient {c}")))
}

/// Either coefficient flavour, as read from a polynomial file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoly {
    Int(MultilinearPoly<i64>),
    Real(MultilinearPoly<f64>),
}

impl AnyPoly {
    pub fn to_real(&self) -> MultilinearPoly<f64> {
        match self {
            AnyPoly::Int(p) => p.to_real(),
            AnyPoly::Real(p) => p.clone(),
        }
    }
}

pub fn poly_to_json<C: Coeff>(p: &MultilinearPoly<C>) -> Result<PolyJson> {
    let terms = p
        .terms()
        .iter()
        .map(|&(s, c)| {
            let coeff = match C::KIND {
                CoeffKind::Int => serde_json::Number::from(c.to_f64() as i64),
                CoeffKind::Real => number_from_f64(c.to_f64())?,
            };
            Ok(PolyTermJson { vars: mask_to_vars(s), coeff })
        })
        .collect::<Result<_>>()?;
    Ok(PolyJson { n: p.n(), coeff_kind: C::KIND, terms })
}

pub fn poly_from_json(j: &PolyJson) -> Result<AnyPoly> {
    if j.n > MAX_VARS {
        return Err(Error::VarCountOutOfRange(j.n));
    }
    match j.coeff_kind {
        CoeffKind::Int => {
            let terms = j
                .terms
                .iter()
                .map(|t| {
                    let c = t.coeff.as_i64().ok_or_else(|| Error::Parse(format!("non-integer coefficient {}", t.coeff)))?;
                    Ok((vars_to_mask(&t.vars, j.n)?, c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPoly::Int(MultilinearPoly::from_terms(j.n, terms)?))
        }
        CoeffKind::Real => {
            let terms = j
                .terms
                .iter()
                .map(|t| {
                    let c = t.coeff.as_f64().ok_or_else(|| Error::Parse(format!("bad coefficient {}", t.coeff)))?;
                    Ok((vars_to_mask(&t.vars, j.n)?, c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPoly::Real(MultilinearPoly::from_terms(j.n, terms)?))
        }
    }
}

pub fn read_poly_file(path: &Path) -> Result<AnyPoly> {
    let j: PolyJson = serde_json::from_str(&fs::read_to_string(path)?)?;
    poly_from_json(&j)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenTermJson {
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub coeff: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenPolyJson {
    pub n: usize,
    pub terms: Vec<GenTermJson>,
}

pub fn genpoly_to_json<C: Coeff>(g: &GenPoly<C>) -> GenPolyJson {
    GenPolyJson {
        n: g.n(),
        terms: g
            .terms()
            .iter()
            .map(|m| GenTermJson { pos: mask_to_vars(m.pos), neg: mask_to_vars(m.neg), coeff: m.coeff.to_f64() })
            .collect(),
    }
}

pub fn genpoly_from_json(j: &GenPolyJson) -> Result<GenPoly<f64>> {
    if j.n > MAX_VARS {
        return Err(Error::VarCountOutOfRange(j.n));
    }
    let terms = j
        .terms
        .iter()
        .map(|t| GenMonomial::new(vars_to_mask(&t.pos, j.n)?, vars_to_mask(&t.neg, j.n)?, t.coeff))
        .collect::<Result<Vec<_>>>()?;
    GenPoly::new(j.n, terms)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeJson {
    Query { var: usize, lo: usize, hi: usize },
    Leaf { leaf: u8 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub nodes: Vec<NodeJson>,
    pub root: usize,
}

pub fn tree_from_json(j: &TreeJson) -> Result<DecisionTree> {
    let nodes = j
        .nodes
        .iter()
        .map(|node| match *node {
            NodeJson::Leaf { leaf: 0 } => Ok(Node::Leaf(false)),
            NodeJson::Leaf { leaf: 1 } => Ok(Node::Leaf(true)),
            NodeJson::Leaf { leaf } => Err(Error::InvalidTree(format!("leaf label {leaf} is not 0 or 1"))),
            NodeJson::Query { var, lo, hi } => {
                if var == 0 || var > j.n {
                    Err(Error::InvalidTree(format!("variable {var} outside 1..={}", j.n)))
                } else {
                    Ok(Node::Query { var: var - 1, lo, hi })
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DecisionTree::new(j.n, nodes, j.root)
}

pub fn tree_to_json(t: &DecisionTree) -> TreeJson {
    TreeJson {
        n: t.n(),
        nodes: t
            .nodes()
            .iter()
            .map(|node| match *node {
                Node::Leaf(b) => NodeJson::Leaf { leaf: b as u8 },
                Node::Query { var, lo, hi } => NodeJson::Query { var: var + 1, lo, hi },
            })
            .collect(),
        root: t.root(),
    }
}

pub fn read_tree_file(path: &Path) -> Result<DecisionTree> {
    let j: TreeJson = serde_json::from_str(&fs::read_to_string(path)?)?;
    tree_from_json(&j)
}

/// Parses the truth-table text format.
pub fn parse_table(text: &str) -> Result<TruthTable> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty truth-table file".into()))?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected `n=<k>`, found `{header}`")))?;
    if n == 0 || n > MAX_VARS {
        return Err(Error::VarCountOutOfRange(n));
    }
    let body: Vec<&str> = lines.collect();
    let joined = body.join(" ");
    let tokens: Vec<&str> = joined.split_whitespace().collect();
    let values: Vec<i64> = if tokens.len() == 1 << n {
        tokens
            .iter()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad table entry `{t}`"))))
            .collect::<Result<_>>()?
    } else {
        joined
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad table character `{c}`"))),
            })
            .collect::<Result<_>>()?
    };
    TruthTable::new(n, values)
}

pub fn read_table_file(path: &Path) -> Result<TruthTable> {
    parse_table(&fs::read_to_string(path)?)
}

pub fn format_table(f: &TruthTable) -> String {
    let body: String = if f.is_boolean() {
        f.values().iter().map(|v| if *v == 1 { '1' } else { '0' }).collect()
    } else {
        f.values().iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
    };
    format!("n={}\n{}\n", f.n(), body)
}

/// Parses an input set: one bit string of length `n` per line.
pub fn parse_input_set(text: &str, n: usize) -> Result<Vec<u32>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| match from_bitstring(l) {
            Some((x, len)) if len == n => Ok(x),
            _ => Err(Error::Parse(format!("bad input `{l}` for n={n}"))),
        })
        .collect()
}

pub fn read_input_set_file(path: &Path, n: usize) -> Result<Vec<u32>> {
    parse_input_set(&fs::read_to_string(path)?, n)
}

pub fn format_input_set(set: &[u32], n: usize) -> String {
    set.iter().map(|&x| to_bitstring(x, n) + "\n").collect()
}
