use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matching::WeightedBipartiteGraph;
use crate::oracle::{Matroid, SetFunction};
use crate::set::{ElementId, ElementSet};

pub const DEFAULT_BASE_BUDGET: usize = 100_000;

/// Every base of `m`, in lexicographic order, or an error once more than `budget` are found.
pub fn enumerate_bases(m: &Matroid, budget: usize) -> Result<Vec<ElementSet>> {
    let ground: Vec<ElementId> = m.ground().iter().collect();
    let mut out = Vec::new();
    let mut current = ElementSet::new();
    extend_bases(m, &ground, 0, &mut current, &mut out, budget)?;
    Ok(out)
}

fn extend_bases(
    m: &Matroid,
    ground: &[ElementId],
    next: usize,
    current: &mut ElementSet,
    out: &mut Vec<ElementSet>,
    budget: usize,
) -> Result<()> {
    if current.len() == m.rank() {
        if out.len() == budget {
            return Err(Error::BudgetExceeded {
                what: "base enumeration",
                limit: budget,
            });
        }
        out.push(current.clone());
        return Ok(());
    }
    if ground.len() - next < m.rank() - current.len() {
        return Ok(());
    }
    let u = ground[next];
    current.insert(u);
    if m.is_independent(current) {
        extend_bases(m, ground, next + 1, current, out, budget)?;
    }
    current.remove(u);
    extend_bases(m, ground, next + 1, current, out, budget)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub value: f64,
    /// Lexicographically first base attaining `value`.
    pub witness: ElementSet,
}

/// Exact maximum of `f` over the bases of `m` (monotone `f` peaks at a base).
pub fn brute_force_opt(f: &SetFunction, m: &Matroid) -> Result<Optimum> {
    brute_force_opt_with_budget(f, m, DEFAULT_BASE_BUDGET)
}

pub fn brute_force_opt_with_budget(f: &SetFunction, m: &Matroid, budget: usize) -> Result<Optimum> {
    let bases = enumerate_bases(m, budget)?;
    best_of(f, &bases)
}

/// Best of the given bases (first on ties).
pub fn best_of(f: &SetFunction, bases: &[ElementSet]) -> Result<Optimum> {
    let mut best: Option<Optimum> = None;
    for b in bases {
        let value = f.evaluate(b);
        if best.as_ref().is_none_or(|o| value > o.value) {
            best = Some(Optimum {
                value,
                witness: b.clone(),
            });
        }
    }
    best.ok_or_else(|| Error::InternalInvariant("matroid has no base".into()))
}

/// Maximum total weight of a perfect matching by trying every permutation; `None` when the
/// graph has no perfect matching.
pub fn brute_force_matching_weight(g: &WeightedBipartiteGraph) -> Option<f64> {
    let k = g.right_size();
    assert_eq!(g.left_size(), k, "square graphs only");
    (0..k)
        .permutations(k)
        .filter_map(|perm| {
            // perm[right] = left
            perm.iter()
                .enumerate()
                .map(|(r, &l)| g.edge(l, r).map(|e| e.weight))
                .sum::<Option<f64>>()
        })
        .fold(None, |best: Option<f64>, w| {
            Some(best.map_or(w, |b| b.max(w)))
        })
}
