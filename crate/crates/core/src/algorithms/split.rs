use serde::{Deserialize, Serialize};

use super::greedy::{argmax, extensions};
use crate::error::{Error, Result};
use crate::oracle::{Matroid, SetFunction};
use crate::set::ElementSet;

/// Output of [`split`]: two disjoint sets whose union is a base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    pub a: ElementSet,
    pub b: ElementSet,
}

impl SplitResult {
    pub fn union(&self) -> ElementSet {
        self.a.union(&self.b)
    }
}

/// Grows two disjoint sets `A` and `B` into a base, one element per iteration.
///
/// Each iteration finds the best extension of `A` (by `f(· | A)`) and of `B` (by `f(· | B)`)
/// among elements that keep `A ∪ B` independent, then adds to `A` iff
/// `p · f(u_A | A) ≥ (1 - p) · f(u_B | B)`, else to `B`. Argmax ties go to the lowest id.
pub fn split(f: &SetFunction, m: &Matroid, p: f64) -> Result<SplitResult> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "split probability must lie in [0, 1], got {p}"
        )));
    }
    let mut a = ElementSet::new();
    let mut b = ElementSet::new();
    for _ in 0..m.rank() {
        let both = a.union(&b);
        let pool = extensions(m, &both);
        let fa = f.marginal(&a)?;
        let fb = f.marginal(&b)?;
        let best_a = argmax(pool.iter().map(|&u| (u, fa.gain(u))));
        let best_b = argmax(pool.iter().map(|&u| (u, fb.gain(u))));
        let (Some((ua, ga)), Some((ub, gb))) = (best_a, best_b) else {
            return Err(Error::InternalInvariant(format!(
                "no element extends {both:?} although it is not a base"
            )));
        };
        if p * ga >= (1.0 - p) * gb {
            a.insert(ua);
        } else {
            b.insert(ub);
        }
    }
    Ok(SplitResult { a, b })
}
