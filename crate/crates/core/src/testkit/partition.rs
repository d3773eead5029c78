use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Matroid, SetFunction};
use crate::set::{ElementId, ElementSet};

const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub t_a: ElementSet,
    pub t_b: ElementSet,
}

/// Finds `T = T_A ∪ T_B` with `A ∪ T_A` and `B ∪ T_B` both bases,
/// `f(A) + f(A ∪ T_A) ≥ f(T)` and `f(B) + f(B ∪ T_B) ≥ f(T)`.
///
/// Candidates are tried by ascending `|T_A|`, then lexicographically.
pub fn split_partition_witness(
    a: &ElementSet,
    b: &ElementSet,
    t: &ElementSet,
    f: &SetFunction,
    m: &Matroid,
) -> Result<PartitionWitness> {
    if !a.is_disjoint(b) || !m.is_base(&a.union(b)) {
        return Err(Error::invalid(format!(
            "{a:?} and {b:?} must partition a base"
        )));
    }
    if !m.is_base(t) {
        return Err(Error::invalid(format!("{t:?} is not a base")));
    }
    if t.len() > 20 {
        return Err(Error::BudgetExceeded {
            what: "partition search over 2^|T| subsets",
            limit: 20,
        });
    }
    let ft = f.evaluate(t);
    let fa = f.evaluate(a);
    let fb = f.evaluate(b);
    let elements: Vec<ElementId> = t.iter().collect();
    for size in 0..=elements.len() {
        for chosen in elements.iter().copied().combinations(size) {
            let t_a: ElementSet = chosen.into_iter().collect();
            let t_b = t.difference(&t_a);
            let with_a = a.union(&t_a);
            let with_b = b.union(&t_b);
            if !m.is_base(&with_a) || !m.is_base(&with_b) {
                continue;
            }
            if fa + f.evaluate(&with_a) >= ft - TOLERANCE
                && fb + f.evaluate(&with_b) >= ft - TOLERANCE
            {
                return Ok(PartitionWitness { t_a, t_b });
            }
        }
    }
    Err(Error::InternalInvariant(format!(
        "no partition of {t:?} works for A = {a:?}, B = {b:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, k: usize) -> Matroid {
        Matroid::from_fn(n, move |s| s.len() <= k).unwrap()
    }

    fn check(
        w: &PartitionWitness,
        a: &ElementSet,
        b: &ElementSet,
        t: &ElementSet,
        f: &SetFunction,
        m: &Matroid,
    ) {
        assert_eq!(w.t_a.union(&w.t_b), *t);
        assert!(w.t_a.is_disjoint(&w.t_b));
        assert!(m.is_base(&a.union(&w.t_a)) && m.is_base(&b.union(&w.t_b)));
        let ft = f.evaluate(t);
        assert!(f.evaluate(a) + f.evaluate(&a.union(&w.t_a)) >= ft - 1e-9);
        assert!(f.evaluate(b) + f.evaluate(&b.union(&w.t_b)) >= ft - 1e-9);
    }

    #[test]
    fn uniform_three_two() {
        let m = uniform(3, 2);
        let f = SetFunction::from_fn(3, |s| s.len() as f64);
        let (a, b, t) = (
            ElementSet::from([0]),
            ElementSet::from([1]),
            ElementSet::from([0, 2]),
        );
        let w = split_partition_witness(&a, &b, &t, &f, &m).unwrap();
        assert_eq!(w.t_a, ElementSet::from([2]));
        assert_eq!(w.t_b, ElementSet::from([0]));
        check(&w, &a, &b, &t, &f, &m);
    }

    #[test]
    fn t_equals_the_split() {
        let m = uniform(4, 2);
        let weights = [4.0, 1.0, 2.0, 3.0];
        let f = SetFunction::from_fn(4, move |s| {
            s.iter().map(|u| weights[u.index()]).sum::<f64>().sqrt()
        });
        let (a, b) = (ElementSet::from([0]), ElementSet::from([1]));
        let t = a.union(&b);
        let w = split_partition_witness(&a, &b, &t, &f, &m).unwrap();
        check(&w, &a, &b, &t, &f, &m);
    }

    #[test]
    fn rejects_overlapping_halves() {
        let m = uniform(3, 2);
        let f = SetFunction::from_fn(3, |s| s.len() as f64);
        let a = ElementSet::from([0]);
        assert!(split_partition_witness(&a, &a, &ElementSet::from([0, 1]), &f, &m).is_err());
    }
}
