//! Residual Random Greedy and its derandomization, Residual Parallel Greedy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::greedy::max_weight_base;
use crate::error::{Error, Result};
use crate::matching::{max_weight_perfect_matching, WeightedBipartiteGraph};
use crate::oracle::{Matroid, SetFunction};
use crate::set::{ElementId, ElementSet};

/// `f(u | A)` for every element of `M/A`, indexed by element id (NaN elsewhere).
fn residual_weights(f: &SetFunction, m: &Matroid, a: &ElementSet) -> Result<(Matroid, Vec<f64>)> {
    let fa = f.marginal(a)?;
    let ma = m.contract(a)?;
    let mut weights = vec![f64::NAN; m.ground_size()];
    for u in ma.ground().iter() {
        weights[u.index()] = fa.gain(u);
    }
    Ok((ma, weights))
}

/// The base `M_i` of `M/A` maximizing `Σ_{u ∈ M_i} f(u | A)` that Residual Random Greedy
/// samples from when its current solution is `A`.
pub fn residual_candidate_base(f: &SetFunction, m: &Matroid, a: &ElementSet) -> Result<ElementSet> {
    let (ma, weights) = residual_weights(f, m, a)?;
    Ok(max_weight_base(&ma, &weights))
}

/// Residual Random Greedy driven by a caller-supplied generator.
pub fn rr_greedy_with_rng<R: Rng + ?Sized>(
    f: &SetFunction,
    m: &Matroid,
    rng: &mut R,
) -> Result<ElementSet> {
    let mut a = ElementSet::new();
    for _ in 0..m.rank() {
        let candidates = residual_candidate_base(f, m, &a)?;
        if candidates.is_empty() {
            return Err(Error::InternalInvariant(format!(
                "M/{a:?} has no base elements left"
            )));
        }
        let pick = candidates.as_slice()[rng.gen_range(0..candidates.len())];
        a.insert(pick);
    }
    Ok(a)
}

/// Residual Random Greedy: `k` rounds, each adding a uniformly random element of a
/// maximum-marginal-weight base of the residual matroid. Reproducible from `seed`.
pub fn rr_greedy(f: &SetFunction, m: &Matroid, seed: u64) -> Result<ElementSet> {
    rr_greedy_with_rng(f, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Residual Parallel Greedy: the deterministic counterpart of [`rr_greedy`].
///
/// Keeps `k` partial solutions `A^j` and residues `B^j` (initially `B`). In every round, each
/// column `j` computes the best residual base `M^j` of `M/A^j`; an element `u ∈ M^j` may replace
/// `v ∈ B^j` when `(A^j + u) ∪ (B^j - v)` is a base and `f(u | A^j) ≥ f(v | A^j)`. A maximum-weight
/// perfect matching between the elements of `B` and the columns picks one such exchange per
/// column. Returns the best final `A^j` (lowest `j` on ties).
pub fn rp_greedy(f: &SetFunction, m: &Matroid, b: &ElementSet) -> Result<ElementSet> {
    let k = m.rank();
    if !m.is_base(b) {
        return Err(Error::invalid(format!(
            "{b:?} is not a base of the matroid"
        )));
    }
    if k == 0 {
        return Ok(ElementSet::new());
    }
    let left: Vec<ElementId> = b.iter().collect();
    let mut a_sets = vec![ElementSet::new(); k];
    let mut b_sets = vec![b.clone(); k];

    for round in 1..=k {
        let mut graph = WeightedBipartiteGraph::new(k, k);
        for j in 0..k {
            let (ma, weights) = residual_weights(f, m, &a_sets[j])?;
            let best = max_weight_base(&ma, &weights);
            for u in best.iter() {
                let with_u = a_sets[j].with(u);
                for (slot, &v) in left.iter().enumerate() {
                    if !b_sets[j].contains(v) || weights[u.index()] < weights[v.index()] {
                        continue;
                    }
                    if m.is_base(&with_u.union(&b_sets[j].without(v))) {
                        graph.add_edge(slot, j, weights[u.index()], u)?;
                    }
                }
            }
        }
        let matching = max_weight_perfect_matching(&graph).map_err(|e| {
            Error::InternalInvariant(format!(
                "round {round}: exchange graph has no perfect matching ({e})"
            ))
        })?;
        for (j, edge) in matching.pairs.iter().enumerate() {
            a_sets[j].insert(edge.payload);
            b_sets[j].remove(left[edge.left]);
        }
    }

    let mut best: Option<(usize, f64)> = None;
    for (j, a) in a_sets.iter().enumerate() {
        let value = f.evaluate(a);
        if best.is_none_or(|(_, v)| value > v) {
            best = Some((j, value));
        }
    }
    Ok(a_sets.swap_remove(best.expect("k >= 1").0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, k: usize) -> Matroid {
        Matroid::from_fn(n, move |s| s.len() <= k).unwrap()
    }

    fn modular(w: Vec<f64>) -> SetFunction {
        SetFunction::from_fn(w.len(), move |s| s.iter().map(|u| w[u.index()]).sum())
    }

    #[test]
    fn rr_rank_one_is_forced() {
        for seed in 0..10 {
            let out = rr_greedy(&modular(vec![1.0, 5.0, 2.0]), &uniform(3, 1), seed).unwrap();
            assert_eq!(out, ElementSet::from([1]));
        }
    }

    #[test]
    fn rr_unique_base() {
        let f = SetFunction::from_fn(2, |s| (s.len() as f64).sqrt());
        for seed in 0..5 {
            assert_eq!(
                rr_greedy(&f, &uniform(2, 2), seed).unwrap(),
                ElementSet::from([0, 1])
            );
        }
    }

    #[test]
    fn rr_is_reproducible() {
        let f = modular(vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let m = uniform(6, 3);
        let a = rr_greedy(&f, &m, 42).unwrap();
        assert_eq!(a, rr_greedy(&f, &m, 42).unwrap());
        assert!(m.is_base(&a));
    }

    #[test]
    fn rp_single_column_trace() {
        // one column, one left vertex e2; M_1 = {e1} with f(e1) = 5 >= f(e2) = 2
        let f = modular(vec![1.0, 5.0, 2.0]);
        let out = rp_greedy(&f, &uniform(3, 1), &ElementSet::from([2])).unwrap();
        assert_eq!(out, ElementSet::from([1]));
        assert_eq!(f.evaluate(&out), 5.0);
    }

    #[test]
    fn rp_unique_base() {
        let f = SetFunction::from_fn(2, |s| (s.len() as f64).sqrt());
        let out = rp_greedy(&f, &uniform(2, 2), &ElementSet::from([0, 1])).unwrap();
        assert_eq!(out, ElementSet::from([0, 1]));
    }

    #[test]
    fn rp_rejects_non_base() {
        let f = modular(vec![1.0, 1.0, 1.0]);
        let err = rp_greedy(&f, &uniform(3, 2), &ElementSet::from([0])).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn rp_output_is_base() {
        let f = modular(vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0]);
        let m = uniform(6, 3);
        let out = rp_greedy(&f, &m, &ElementSet::from([0, 1, 3])).unwrap();
        assert!(m.is_base(&out));
        // modular: every column ends on the top-3 base
        assert_eq!(out, ElementSet::from([2, 4, 5]));
    }
}
