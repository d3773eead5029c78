//! Exhaustive axiom checks for small ground sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Matroid, SetFunction};
use crate::set::{ElementId, ElementSet};

/// Largest ground set the validators accept (they enumerate all `2^n` subsets).
pub const MAX_VALIDATION_N: usize = 12;
const TOLERANCE: f64 = 1e-9;
const KEPT_VIOLATIONS: usize = 50;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: u64,
    pub violation_count: u64,
    /// The first few violations, human-readable.
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(describe());
            }
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VALIDATION_N {
        return Err(Error::invalid(format!(
            "exhaustive validation needs n <= {MAX_VALIDATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Checks non-negativity, monotonicity (`f(S) ≤ f(S + u)`) and submodularity in its local
/// form `f(S + u) + f(S + v) ≥ f(S + u + v) + f(S)` over every `S` and `u, v ∉ S`.
pub fn validate_monotone_submodular(f: &SetFunction, n: usize) -> Result<ValidationReport> {
    check_size(n)?;
    let values: Vec<f64> = (0..1u64 << n)
        .map(|mask| f.evaluate(&ElementSet::from_mask(mask)))
        .collect();
    let mut report = ValidationReport::default();
    let show = |mask: u64| format!("{:?}", ElementSet::from_mask(mask));
    for s in 0..1u64 << n {
        report.record(values[s as usize] >= -TOLERANCE, || {
            format!("f({}) = {} is negative", show(s), values[s as usize])
        });
        for u in (0..n).filter(|&u| s & (1 << u) == 0) {
            let su = s | 1 << u;
            report.record(
                values[su as usize] >= values[s as usize] - TOLERANCE,
                || format!("f({}) < f({})", show(su), show(s)),
            );
            for v in (u + 1..n).filter(|&v| s & (1 << v) == 0) {
                let sv = s | 1 << v;
                let suv = su | 1 << v;
                let lhs = values[su as usize] + values[sv as usize];
                let rhs = values[suv as usize] + values[s as usize];
                report.record(lhs >= rhs - TOLERANCE, || {
                    format!(
                        "marginal of {} grows from {} to {} when {} joins {}",
                        ElementId(v as u32),
                        values[sv as usize] - values[s as usize],
                        values[suv as usize] - values[su as usize],
                        ElementId(u as u32),
                        show(s)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Checks that the empty set is independent, that independence is closed under removing one
/// element, and the exchange property for every pair `|T| = |S| + 1` of independent sets.
/// Together these imply the full axioms.
pub fn validate_matroid_axioms(m: &Matroid, n: usize) -> Result<ValidationReport> {
    check_size(n)?;
    let independent: Vec<bool> = (0..1u64 << n)
        .map(|mask| m.is_independent(&ElementSet::from_mask(mask)))
        .collect();
    let mut report = ValidationReport::default();
    report.record(independent[0], || "the empty set is dependent".into());
    for s in 0..1u64 << n {
        if !independent[s as usize] {
            continue;
        }
        for u in (0..n).filter(|&u| s & (1 << u) != 0) {
            let smaller = s & !(1 << u);
            report.record(independent[smaller as usize], || {
                format!(
                    "{:?} is independent but {:?} is not",
                    ElementSet::from_mask(s),
                    ElementSet::from_mask(smaller)
                )
            });
        }
    }
    let by_size = |size: u32| (0..1u64 << n).filter(move |&mask| mask.count_ones() == size);
    for size in 0..n as u32 {
        for s in by_size(size).filter(|&s| independent[s as usize]) {
            for t in by_size(size + 1).filter(|&t| independent[t as usize]) {
                let extra = t & !s;
                let augments =
                    (0..n).any(|u| extra & (1 << u) != 0 && independent[(s | 1 << u) as usize]);
                report.record(augments, || {
                    format!(
                        "no element of {:?} extends {:?}",
                        ElementSet::from_mask(t),
                        ElementSet::from_mask(s)
                    )
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_passes() {
        let w = [1.0, 0.0, 2.5, 4.0];
        let f = SetFunction::from_fn(4, move |s| s.iter().map(|u| w[u.index()]).sum());
        let r = validate_monotone_submodular(&f, 4).unwrap();
        assert!(r.passed());
        assert!(r.checks > 0);
    }

    #[test]
    fn squared_cardinality_fails() {
        let f = SetFunction::from_fn(3, |s| (s.len() * s.len()) as f64);
        let r = validate_monotone_submodular(&f, 3).unwrap();
        assert!(!r.passed());
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn decreasing_function_fails() {
        let f = SetFunction::from_fn(3, |s| 3.0 - s.len() as f64);
        assert!(!validate_monotone_submodular(&f, 3).unwrap().passed());
    }

    #[test]
    fn uniform_passes() {
        let m = Matroid::from_fn(5, |s| s.len() <= 3).unwrap();
        assert!(validate_matroid_axioms(&m, 5).unwrap().passed());
    }

    #[test]
    fn non_matroid_fails() {
        // {e0,e1} and {e2} are the maximal sets: {e2} cannot be augmented from {e0,e1}
        let m = Matroid::from_fn(3, |s| {
            let mask = s.to_mask();
            mask & 0b011 == mask || mask == 0b100
        })
        .unwrap();
        assert!(!validate_matroid_axioms(&m, 3).unwrap().passed());
    }

    #[test]
    fn too_large() {
        let f = SetFunction::from_fn(20, |s| s.len() as f64);
        assert!(validate_monotone_submodular(&f, 20).is_err());
    }
}
