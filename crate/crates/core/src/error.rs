// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count {0} outside supported range 1..={max}", max = crate::MAX_VARS)]
    VarCountOutOfRange(usize),
    #[error("truth table for n={n} needs {expected} entries, got {got}")]
    TableLength { n: usize, expected: usize, got: usize },
    #[error("expected a Boolean table, found value {value} at input {input}")]
    NotBoolean { input: u32, value: String },
    #[error("variable index {index} outside ambient range 0..{n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("mismatched variable counts: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("input set contains duplicate element {0:#b}")]
    DuplicateInput(u32),
    #[error("input set is empty")]
    EmptyInputSet,
    #[error("input set is not separating: inputs {0:#b} and {1:#b} agree on their sensitive coordinates")]
    NotSeparating(u32, u32),
    #[error("function is not monotone: f({lo:#b}) > f({hi:#b})")]
    NotMonotone { lo: u32, hi: u32 },
    #[error("function is constant")]
    ConstantFunction,
    #[error("zero polynomial passed where a non-zero polynomial is required")]
    ZeroPolynomial,
    #[error("polynomial mentions variables outside the restriction domain")]
    VarsOutsideDomain,
    #[error("ambient variable count must be at least 2, got {0}")]
    AmbientTooSmall(usize),
    #[error("exact mode limited to n <= {limit}, got {n}")]
    TooLargeForExact { n: usize, limit: usize },
    #[error("blocks overlap or are not all-zero under the base input")]
    InvalidBlocks,
    #[error("balancedness violated at variable {var}: l1(R0)={l1_r0}, l1(R1)={l1_r1}, l1(Q)={l1_q}")]
    BalanceViolated { var: usize, l1_r0: f64, l1_r1: f64, l1_q: f64 },
    #[error("active-branch quota missed: count {count} < |F|/(4n) with |F|={set_size}, n={n}")]
    QuotaMissed { count: usize, set_size: usize, n: usize },
    #[error("sampling budget of {0} attempts exhausted")]
    SamplingBudgetExhausted(usize),
    #[error("amplifier precondition violated at input {input:#b}: value {value}")]
    AmplifyPrecondition { input: u32, value: f64 },
    #[error("success probability {prob} below 2/3 at input {input:#b}")]
    LowSuccessProbability { input: u32, prob: f64 },
    #[error("invalid decision tree: {0}")]
    InvalidTree(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("overlapping literal sets in generalized monomial (pos {pos:#b}, neg {neg:#b})")]
    OverlappingLiterals { pos: u32, neg: u32 },
    #[error("unknown function spec `{0}`")]
    UnknownFunction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
