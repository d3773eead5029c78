use crate::oracle::{Matroid, SetFunction};
use crate::set::{ElementId, ElementSet};

/// Argmax over `(id, value)` pairs; ties go to the first (lowest) id.
pub(crate) fn argmax(
    items: impl IntoIterator<Item = (ElementId, f64)>,
) -> Option<(ElementId, f64)> {
    let mut best: Option<(ElementId, f64)> = None;
    for (u, v) in items {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((u, v));
        }
    }
    best
}

/// Elements that can extend the independent set `current`: `{u ∉ current : current + u ∈ I}`.
pub(crate) fn extensions(m: &Matroid, current: &ElementSet) -> Vec<ElementId> {
    m.ground()
        .iter()
        .filter(|&u| !current.contains(u) && m.is_independent(&current.with(u)))
        .collect()
}

/// Matroid greedy: scan the ground set by descending weight (ascending id on ties) and keep
/// every element that preserves independence. Returns a maximum-weight base.
///
/// `weights` is indexed by element id over the whole underlying ground set; entries for
/// contracted elements are ignored.
pub fn max_weight_base(m: &Matroid, weights: &[f64]) -> ElementSet {
    let mut order: Vec<ElementId> = m.ground().iter().collect();
    order.sort_by(|a, b| {
        weights[b.index()]
            .total_cmp(&weights[a.index()])
            .then(a.cmp(b))
    });
    let mut base = ElementSet::new();
    for u in order {
        if base.len() == m.rank() {
            break;
        }
        let candidate = base.with(u);
        if m.is_independent(&candidate) {
            base = candidate;
        }
    }
    debug_assert_eq!(base.len(), m.rank());
    base
}

/// Classical greedy: repeatedly add the feasible element of largest marginal value.
pub fn classical_greedy(f: &SetFunction, m: &Matroid) -> ElementSet {
    let mut solution = ElementSet::new();
    for _ in 0..m.rank() {
        let fa = f
            .marginal(&solution)
            .expect("solution lies in the ground set");
        let pool = extensions(m, &solution);
        match argmax(pool.into_iter().map(|u| (u, fa.gain(u)))) {
            Some((u, _)) => {
                solution.insert(u);
            }
            None => break,
        }
    }
    solution
}

/// Optimal solution for rank-1 matroids: the best independent singleton.
pub fn best_singleton(f: &SetFunction, m: &Matroid) -> ElementSet {
    let pool = extensions(m, &ElementSet::new());
    argmax(pool.into_iter().map(|u| (u, f.gain(u))))
        .map(|(u, _)| ElementSet::singleton(u))
        .unwrap_or_default()
}
