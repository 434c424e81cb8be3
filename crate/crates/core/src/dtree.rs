// SPDX-License-Identifier: Apache-2.0

//! Decision trees, their generalized-polynomial form, and distributions over trees.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};
use crate::genpoly::{GenMonomial, GenPoly};
use crate::table::TruthTable;
use crate::MAX_VARS;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Leaf(bool),
    /// Queries `x_var`; follows `lo` on 0 and `hi` on 1.
    Query { var: usize, lo: usize, hi: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    n: usize,
    nodes: Vec<Node>,
    root: usize,
}

impl DecisionTree {
    /// Validates child indices, variable range and that no variable repeats
    /// on a root-to-leaf path (which also rules out cycles).
    pub fn new(n: usize, nodes: Vec<Node>, root: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        let t = DecisionTree { n, nodes, root };
        t.check(t.root, 0)?;
        Ok(t)
    }

    fn check(&self, idx: usize, path: u32) -> Result<()> {
        match self.nodes.get(idx) {
            None => Err(Error::InvalidTree(format!("node index {idx} out of range"))),
            Some(Node::Leaf(_)) => Ok(()),
            Some(&Node::Query { var, lo, hi }) => {
                if var >= self.n {
                    return Err(Error::InvalidTree(format!("variable {} outside 1..={}", var + 1, self.n)));
                }
                if path >> var & 1 == 1 {
                    return Err(Error::InvalidTree(format!("variable {} repeats on a path", var + 1)));
                }
                self.check(lo, path | 1 << var)?;
                self.check(hi, path | 1 << var)
            }
        }
    }

    pub fn leaf(n: usize, value: bool) -> Self {
        DecisionTree { n, nodes: vec![Node::Leaf(value)], root: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn eval(&self, x: u32) -> bool {
        let mut idx = self.root;
        loop {
            match self.nodes[idx] {
                Node::Leaf(b) => return b,
                Node::Query { var, lo, hi } => idx = if x >> var & 1 == 1 { hi } else { lo },
            }
        }
    }

    /// Walks every root-to-leaf path, passing the leaf value and the literals on the path.
    fn paths(&self, mut visit: impl FnMut(bool, u32, u32, usize)) {
        let mut stack = vec![(self.root, 0u32, 0u32, 0usize)];
        while let Some((idx, pos, neg, depth)) = stack.pop() {
            match self.nodes[idx] {
                Node::Leaf(b) => visit(b, pos, neg, depth),
                Node::Query { var, lo, hi } => {
                    stack.push((hi, pos | 1 << var, neg, depth + 1));
                    stack.push((lo, pos, neg | 1 << var, depth + 1));
                }
            }
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        let mut c = 0;
        self.paths(|_, _, _, _| c += 1);
        c
    }

    pub fn depth(&self) -> usize {
        let mut d = 0;
        self.paths(|_, _, _, depth| d = d.max(depth));
        d
    }

    /// One monomial per 1-leaf: `x_i` for each 1-edge and `x̄_i` for each 0-edge on its path.
    pub fn to_genpoly(&self) -> GenPoly<i64> {
        let mut terms = Vec::new();
        self.paths(|b, pos, neg, _| {
            if b {
                terms.push(GenMonomial { pos, neg, coeff: 1 });
            }
        });
        GenPoly::new(self.n, terms).expect("paths have disjoint literal sets")
    }

    pub fn to_table(&self) -> Result<TruthTable> {
        TruthTable::from_predicate(self.n, |x| self.eval(x))
    }

    /// A random tree of depth at most `max_depth` with uniformly random leaf labels.
    pub fn random<R: Rng + ?Sized>(n: usize, max_depth: usize, rng: &mut R) -> Self {
        fn grow<R: Rng + ?Sized>(n: usize, left: usize, used: u32, nodes: &mut Vec<Node>, rng: &mut R) -> usize {
            let free: Vec<usize> = (0..n).filter(|&i| used >> i & 1 == 0).collect();
            let idx = nodes.len();
            if left == 0 || free.is_empty() || rng.gen_bool(0.25) {
                nodes.push(Node::Leaf(rng.gen()));
                return idx;
            }
            let var = free[rng.gen_range(0..free.len())];
            nodes.push(Node::Leaf(false));
            let lo = grow(n, left - 1, used | 1 << var, nodes, rng);
            let hi = grow(n, left - 1, used | 1 << var, nodes, rng);
            nodes[idx] = Node::Query { var, lo, hi };
            idx
        }
        let mut nodes = Vec::new();
        let root = grow(n, max_depth, 0, &mut nodes, rng);
        DecisionTree { n, nodes, root }
    }

    /// The chain `x1 ? 1 : (x2 ? 1 : ...)` computing OR.
    pub fn or_chain(n: usize) -> Self {
        let mut nodes = vec![Node::Leaf(false), Node::Leaf(true)];
        let mut next = 0;
        for var in (0..n).rev() {
            nodes.push(Node::Query { var, lo: next, hi: 1 });
            next = nodes.len() - 1;
        }
        DecisionTree { n, nodes, root: next }
    }
}

/// A finite distribution over decision trees.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedTree {
    support: Vec<(DecisionTree, f64)>,
}

const WEIGHT_TOL: f64 = 1e-9;

impl RandomizedTree {
    pub fn new(support: Vec<(DecisionTree, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidWeights("empty support".into()));
        }
        let n = support[0].0.n();
        if support.iter().any(|(t, _)| t.n() != n) {
            return Err(Error::InvalidWeights("trees disagree on n".into()));
        }
        if support.iter().any(|(_, w)| w.is_nan() || *w < 0.0) {
            return Err(Error::InvalidWeights("negative or NaN weight".into()));
        }
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(RandomizedTree { support })
    }

    pub fn n(&self) -> usize {
        self.support[0].0.n()
    }

    pub fn support(&self) -> &[(DecisionTree, f64)] {
        &self.support
    }

    /// `Pr_T[T(x) = f(x)]`.
    pub fn success_probability(&self, f: &TruthTable, x: u32) -> f64 {
        self.support.iter().filter(|(t, _)| t.eval(x) == f.bit(x)).map(|(_, w)| w).sum()
    }

    /// Input with the lowest success probability, and that probability.
    pub fn worst_input(&self, f: &TruthTable) -> (u32, f64) {
        (0..f.len() as u32)
            .map(|x| (x, self.success_probability(f, x)))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    /// `Σ w_T · P(T)`.
    pub fn to_genpoly(&self) -> GenPoly<f64> {
        self.support
            .iter()
            .fold(GenPoly::zero(self.n()), |acc, (t, w)| acc.add(&t.to_genpoly().to_real().scale(*w)))
    }

    /// Subsamples `m` trees i.i.d. by weight, reweighted uniformly.
    pub fn subsample<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<RandomizedTree> {
        if m == 0 {
            return Err(Error::InvalidParameter("support size must be positive".into()));
        }
        let dist = WeightedIndex::new(self.support.iter().map(|(_, w)| *w))
            .map_err(|e| Error::InvalidWeights(e.to_string()))?;
        let support = (0..m).map(|_| (self.support[dist.sample(rng)].0.clone(), 1.0 / m as f64)).collect();
        RandomizedTree::new(support)
    }
}

/// Convex combination of the trees' polynomials after checking that every
/// input is computed correctly with probability at least 2/3.
pub fn randomized_to_genpoly(r: &RandomizedTree, f: &TruthTable) -> Result<GenPoly<f64>> {
    if r.n() != f.n() {
        return Err(Error::DimensionMismatch(r.n(), f.n()));
    }
    let (x, p) = r.worst_input(f);
    if p < 2.0 / 3.0 - WEIGHT_TOL {
        return Err(Error::LowSuccessProbability { input: x, prob: p });
    }
    Ok(r.to_genpoly())
}

/// Support reduction: subsample `m` trees and keep the first sample whose
/// success probability is still at least 2/3 everywhere.
pub fn reduce_support<R: Rng + ?Sized>(
    r: &RandomizedTree,
    f: &TruthTable,
    m: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<RandomizedTree> {
    for _ in 0..attempts {
        let s = r.subsample(m, rng)?;
        if s.worst_input(f).1 >= 2.0 / 3.0 - WEIGHT_TOL {
            return Ok(s);
        }
    }
    Err(Error::SamplingBudgetExhausted(attempts))
}
