//! Weighted exchange bijection between a maximum-weight base and any other base.

use serde::{Deserialize, Serialize};

use crate::algorithms::max_weight_base;
use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::set::{ElementId, ElementSet};

const TOLERANCE: f64 = 1e-9;

/// A bijection `h: A → B` stored as `(u, h(u))` pairs in the order they were constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionWitness {
    pub mapping: Vec<(ElementId, ElementId)>,
}

impl BijectionWitness {
    pub fn image(&self, u: ElementId) -> Option<ElementId> {
        self.mapping.iter().find(|(a, _)| *a == u).map(|&(_, b)| b)
    }
}

fn total(w: &[f64], s: &ElementSet) -> f64 {
    s.iter().map(|u| w[u.index()]).sum()
}

/// Builds `h: A → B` such that `(B - h(u)) + u` is a base and `w(u) ≥ w(h(u))` for every
/// `u ∈ A`, where `A` is a maximum-weight base.
///
/// Repeatedly takes the lightest `u_A ∈ A`, pairs it with itself if it is also in `B` and
/// otherwise with the first `u_B ∈ B \ A` for which both `(A - u_A) + u_B` and
/// `(B - u_B) + u_A` are bases, then contracts `u_B` and continues with the smaller bases.
pub fn exchange_bijection(
    a: &ElementSet,
    b: &ElementSet,
    w: &[f64],
    m: &Matroid,
) -> Result<BijectionWitness> {
    if w.len() != m.ground_size() {
        return Err(Error::invalid(format!(
            "weight vector has {} entries for a ground set of {}",
            w.len(),
            m.ground_size()
        )));
    }
    if !m.is_base(a) || !m.is_base(b) {
        return Err(Error::invalid(format!(
            "{a:?} and {b:?} must both be bases"
        )));
    }
    let best = total(w, &max_weight_base(m, w));
    if total(w, a) < best - TOLERANCE {
        return Err(Error::invalid(format!(
            "{a:?} has weight {} but the maximum-weight base has {best}",
            total(w, a)
        )));
    }

    let mut mapping = Vec::with_capacity(a.len());
    let mut a = a.clone();
    let mut b = b.clone();
    let mut m = m.clone();
    while let Some(u_a) = a
        .iter()
        .min_by(|x, y| w[x.index()].total_cmp(&w[y.index()]).then(x.cmp(y)))
    {
        let a_rest = a.without(u_a);
        let u_b = if b.contains(u_a) {
            u_a
        } else {
            b.difference(&a)
                .iter()
                .find(|&v| m.is_base(&a_rest.with(v)) && m.is_base(&b.without(v).with(u_a)))
                .ok_or_else(|| {
                    Error::InternalInvariant(format!(
                        "no exchange partner for {u_a} between {a:?} and {b:?}"
                    ))
                })?
        };
        mapping.push((u_a, u_b));
        m = m.contract(&ElementSet::singleton(u_b))?;
        a = a_rest;
        b.remove(u_b);
    }
    Ok(BijectionWitness { mapping })
}

/// Re-checks a witness with raw independence-oracle calls. Returns one message per failed
/// property; an empty list means the witness is valid.
pub fn verify_bijection(
    witness: &BijectionWitness,
    a: &ElementSet,
    b: &ElementSet,
    w: &[f64],
    m: &Matroid,
) -> Vec<String> {
    let oracle = m.oracle();
    let mut problems = Vec::new();
    let domain: ElementSet = witness.mapping.iter().map(|&(u, _)| u).collect();
    let image: ElementSet = witness.mapping.iter().map(|&(_, v)| v).collect();
    if witness.mapping.len() != a.len() || domain != *a {
        problems.push(format!("domain {domain:?} is not {a:?}"));
    }
    if witness.mapping.len() != b.len() || image != *b {
        problems.push(format!("image {image:?} is not {b:?}"));
    }
    for &(u, v) in &witness.mapping {
        let swapped = b.without(v).with(u);
        if swapped.len() != b.len() || !oracle.is_independent(&swapped) {
            problems.push(format!("(B - {v}) + {u} = {swapped:?} is not a base"));
        }
        if w[u.index()] < w[v.index()] - TOLERANCE {
            problems.push(format!(
                "w({u}) = {} < w({v}) = {}",
                w[u.index()],
                w[v.index()]
            ));
        }
    }
    problems
}
