//! Exact distribution of Residual Random Greedy by enumerating every random choice.

use crate::algorithms::residual_candidate_base;
use crate::error::{Error, Result};
use crate::oracle::{Matroid, SetFunction};
use crate::set::ElementSet;

pub const DEFAULT_LEAF_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationNode {
    /// Number of elements chosen so far (the round index `i` of `A_i`).
    pub depth: usize,
    pub set: ElementSet,
    pub probability: f64,
    /// Candidate base sampled from at this node; empty at the leaves.
    pub candidates: ElementSet,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationLeaf {
    pub set: ElementSet,
    pub value: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationTree {
    /// Node 0 is the root (`A_0 = ∅`).
    pub nodes: Vec<ExpectationNode>,
    pub leaves: Vec<ExpectationLeaf>,
    /// `expected_by_round[i] = E[f(A_i)]` for `i = 0..=k`.
    pub expected_by_round: Vec<f64>,
}

impl ExpectationTree {
    pub fn expected_value(&self) -> f64 {
        *self
            .expected_by_round
            .last()
            .expect("at least the root round")
    }

    pub fn total_probability(&self) -> f64 {
        self.leaves.iter().map(|l| l.probability).sum()
    }

    /// Standard deviation of `f(A_k)`.
    pub fn std_dev(&self) -> f64 {
        let mean = self.expected_value();
        self.leaves
            .iter()
            .map(|l| l.probability * (l.value - mean).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// `(E[f(A_k)], tree)` for Residual Random Greedy on `(f, m)`.
pub fn rr_greedy_exact_expectation(f: &SetFunction, m: &Matroid) -> Result<(f64, ExpectationTree)> {
    rr_greedy_exact_expectation_with_budget(f, m, DEFAULT_LEAF_BUDGET)
}

/// Number of leaves the expectation tree will have: `k!`, since round `i` samples from a
/// base of a rank `k - i + 1` matroid.
pub fn expectation_leaf_count(m: &Matroid) -> usize {
    (1..=m.rank())
        .try_fold(1usize, |acc, i| acc.checked_mul(i))
        .unwrap_or(usize::MAX)
}

pub fn rr_greedy_exact_expectation_with_budget(
    f: &SetFunction,
    m: &Matroid,
    budget: usize,
) -> Result<(f64, ExpectationTree)> {
    if expectation_leaf_count(m) > budget {
        return Err(Error::BudgetExceeded {
            what: "expectation tree leaves",
            limit: budget,
        });
    }
    let k = m.rank();
    let mut tree = ExpectationTree {
        nodes: vec![ExpectationNode {
            depth: 0,
            set: ElementSet::new(),
            probability: 1.0,
            candidates: ElementSet::new(),
            children: Vec::new(),
        }],
        leaves: Vec::new(),
        expected_by_round: vec![0.0; k + 1],
    };
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let (depth, set, probability) = {
            let n = &tree.nodes[id];
            (n.depth, n.set.clone(), n.probability)
        };
        let value = f.evaluate(&set);
        tree.expected_by_round[depth] += probability * value;
        if depth == k {
            tree.leaves.push(ExpectationLeaf {
                set,
                value,
                probability,
            });
            continue;
        }
        let candidates = residual_candidate_base(f, m, &set)?;
        let share = probability / candidates.len() as f64;
        let mut children = Vec::with_capacity(candidates.len());
        for u in candidates.iter() {
            children.push(tree.nodes.len());
            tree.nodes.push(ExpectationNode {
                depth: depth + 1,
                set: set.with(u),
                probability: share,
                candidates: ElementSet::new(),
                children: Vec::new(),
            });
        }
        // reversed so the stack pops children in ascending order
        stack.extend(children.iter().rev());
        let node = &mut tree.nodes[id];
        node.candidates = candidates;
        node.children = children;
    }
    Ok((tree.expected_value(), tree))
}
