//! Value and independence oracles with query accounting.
//!
//! Algorithms never see a concrete objective or matroid. They get a [`SetFunction`] and a
//! [`Matroid`], thin counted handles over shared immutable oracles. Conditioning an objective on
//! a set ([`SetFunction::marginal`]) or contracting a matroid ([`Matroid::contract`]) produces a
//! new handle that still reports to the original counter, so a whole run is priced in one place.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{ElementId, ElementSet};

/// A non-negative set function `f: 2^N -> R` over the ground set `0..ground_size()`.
pub trait ValueOracle: Send + Sync {
    fn ground_size(&self) -> usize;
    fn value(&self, set: &ElementSet) -> f64;
}

/// Independence oracle of a matroid over `0..ground_size()`.
pub trait IndependenceOracle: Send + Sync {
    fn ground_size(&self) -> usize;
    fn is_independent(&self, set: &ElementSet) -> bool;

    /// Rank of the matroid. The default grows a base greedily through the oracle.
    fn rank(&self) -> usize {
        let mut base = ElementSet::new();
        for u in 0..self.ground_size() {
            let candidate = base.with(ElementId::from(u));
            if self.is_independent(&candidate) {
                base = candidate;
            }
        }
        base.len()
    }
}

/// Adapts a closure into a [`ValueOracle`]. Mostly useful in tests.
pub struct FnValueOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&ElementSet) -> f64 + Send + Sync> FnValueOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnValueOracle { n, f }
    }
}

impl<F: Fn(&ElementSet) -> f64 + Send + Sync> ValueOracle for FnValueOracle<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &ElementSet) -> f64 {
        (self.f)(set)
    }
}

/// Adapts a closure into an [`IndependenceOracle`].
pub struct FnIndependenceOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&ElementSet) -> bool + Send + Sync> FnIndependenceOracle<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnIndependenceOracle { n, f }
    }
}

impl<F: Fn(&ElementSet) -> bool + Send + Sync> IndependenceOracle for FnIndependenceOracle<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        (self.f)(set)
    }
}

/// Shared query counter. Clones observe and increment the same count.
#[derive(Clone, Default)]
pub struct QueryCounter(Arc<AtomicU64>);

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }
}

impl fmt::Debug for QueryCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QueryCounter({})", self.get())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCounts {
    pub value_queries: u64,
    pub independence_queries: u64,
}

impl OracleCounts {
    pub fn of(f: &SetFunction, m: &Matroid) -> Self {
        OracleCounts {
            value_queries: f.queries(),
            independence_queries: m.queries(),
        }
    }

    /// Counts accumulated since `earlier`.
    pub fn since(self, earlier: OracleCounts) -> OracleCounts {
        OracleCounts {
            value_queries: self.value_queries - earlier.value_queries,
            independence_queries: self.independence_queries - earlier.independence_queries,
        }
    }
}

/// Counted handle on a value oracle, optionally conditioned on a set `A`, in which case it
/// evaluates the marginal `f(S | A) = f(S ∪ A) - f(A)`.
#[derive(Clone)]
pub struct SetFunction {
    oracle: Arc<dyn ValueOracle>,
    counter: QueryCounter,
    condition: ElementSet,
    // f(A), filled on first use and shared between clones.
    condition_value: Arc<OnceLock<f64>>,
}

impl SetFunction {
    /// Wraps an oracle with a fresh counter.
    pub fn new(oracle: Arc<dyn ValueOracle>) -> Self {
        SetFunction {
            oracle,
            counter: QueryCounter::new(),
            condition: ElementSet::new(),
            condition_value: Arc::new(OnceLock::new()),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(&ElementSet) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(Arc::new(FnValueOracle::new(n, f)))
    }

    /// Same function (including any conditioning) but counting on a fresh counter.
    pub fn with_fresh_counter(&self) -> Self {
        SetFunction {
            oracle: Arc::clone(&self.oracle),
            counter: QueryCounter::new(),
            condition: self.condition.clone(),
            condition_value: Arc::new(OnceLock::new()),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.oracle.ground_size()
    }

    /// The set this function is conditioned on (empty for a plain objective).
    pub fn condition(&self) -> &ElementSet {
        &self.condition
    }

    pub fn oracle(&self) -> &Arc<dyn ValueOracle> {
        &self.oracle
    }

    pub fn queries(&self) -> u64 {
        self.counter.get()
    }

    pub fn counter(&self) -> &QueryCounter {
        &self.counter
    }

    /// One counted oracle call (plus one more the first time a conditioned function is used).
    ///
    /// Panics if `set` contains an element outside the ground set.
    pub fn evaluate(&self, set: &ElementSet) -> f64 {
        self.check_range(set).unwrap_or_else(|e| panic!("{e}"));
        if self.condition.is_empty() {
            self.counter.bump();
            return self.oracle.value(set);
        }
        let base = *self.condition_value.get_or_init(|| {
            self.counter.bump();
            self.oracle.value(&self.condition)
        });
        self.counter.bump();
        self.oracle.value(&set.union(&self.condition)) - base
    }

    /// `f(u | ·)`: the value of the singleton under this (possibly conditioned) function.
    pub fn gain(&self, u: ElementId) -> f64 {
        self.evaluate(&ElementSet::singleton(u))
    }

    /// `g(S) = f(S ∪ A) - f(A)`, counting on this function's counter.
    ///
    /// Conditioning composes: the marginal of a marginal is the marginal on the union.
    pub fn marginal(&self, a: &ElementSet) -> Result<SetFunction> {
        self.check_range(a)?;
        if a.is_empty() {
            return Ok(self.clone());
        }
        Ok(SetFunction {
            oracle: Arc::clone(&self.oracle),
            counter: self.counter.clone(),
            condition: self.condition.union(a),
            condition_value: Arc::new(OnceLock::new()),
        })
    }

    fn check_range(&self, set: &ElementSet) -> Result<()> {
        match set.max_element() {
            Some(u) if u.index() >= self.ground_size() => Err(Error::invalid(format!(
                "element {u} outside ground set of size {}",
                self.ground_size()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunction")
            .field("n", &self.ground_size())
            .field("condition", &self.condition)
            .field("queries", &self.queries())
            .finish()
    }
}

/// Counted handle on an independence oracle, optionally contracted by an independent set `A`.
///
/// The contraction `M/A` lives on the ground set `N \ A`; a set `S` is independent in it iff
/// `S ∪ A` is independent in `M`. Sets that touch `A` are not part of the contracted ground set
/// and are reported as dependent.
#[derive(Clone)]
pub struct Matroid {
    oracle: Arc<dyn IndependenceOracle>,
    counter: QueryCounter,
    contracted: ElementSet,
    rank: usize,
}

impl Matroid {
    /// Wraps an oracle with a fresh counter. Rank-0 matroids are rejected.
    pub fn new(oracle: Arc<dyn IndependenceOracle>) -> Result<Self> {
        let rank = oracle.rank();
        if rank == 0 {
            return Err(Error::invalid("matroid rank must be at least 1"));
        }
        Ok(Matroid {
            oracle,
            counter: QueryCounter::new(),
            contracted: ElementSet::new(),
            rank,
        })
    }

    pub fn from_fn(
        n: usize,
        f: impl Fn(&ElementSet) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(Arc::new(FnIndependenceOracle::new(n, f)))
    }

    pub fn with_fresh_counter(&self) -> Self {
        Matroid {
            counter: QueryCounter::new(),
            ..self.clone()
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size of the underlying (uncontracted) ground set; element ids range over `0..ground_size()`.
    pub fn ground_size(&self) -> usize {
        self.oracle.ground_size()
    }

    /// Elements of this matroid's ground set, i.e. everything not contracted away.
    pub fn ground(&self) -> ElementSet {
        (0..self.ground_size())
            .map(ElementId::from)
            .filter(|&u| !self.contracted.contains(u))
            .collect()
    }

    pub fn contracted(&self) -> &ElementSet {
        &self.contracted
    }

    pub fn oracle(&self) -> &Arc<dyn IndependenceOracle> {
        &self.oracle
    }

    pub fn queries(&self) -> u64 {
        self.counter.get()
    }

    pub fn counter(&self) -> &QueryCounter {
        &self.counter
    }

    /// One counted oracle call.
    pub fn is_independent(&self, set: &ElementSet) -> bool {
        self.counter.bump();
        if !set.is_disjoint(&self.contracted) {
            return false;
        }
        if matches!(set.max_element(), Some(u) if u.index() >= self.ground_size()) {
            return false;
        }
        self.oracle.is_independent(&set.union(&self.contracted))
    }

    /// True iff `set` is independent and has exactly `rank` elements.
    pub fn is_base(&self, set: &ElementSet) -> bool {
        set.len() == self.rank && self.is_independent(set)
    }

    /// `M/A`. Fails unless `a` is an independent set of this matroid.
    pub fn contract(&self, a: &ElementSet) -> Result<Matroid> {
        if a.is_empty() {
            return Ok(self.clone());
        }
        if !self.is_independent(a) {
            return Err(Error::invalid(format!(
                "cannot contract {a:?}: not independent"
            )));
        }
        Ok(Matroid {
            oracle: Arc::clone(&self.oracle),
            counter: self.counter.clone(),
            contracted: self.contracted.union(a),
            rank: self.rank - a.len(),
        })
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.ground_size())
            .field("rank", &self.rank)
            .field("contracted", &self.contracted)
            .field("queries", &self.queries())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modular(weights: Vec<f64>) -> SetFunction {
        let n = weights.len();
        SetFunction::from_fn(n, move |s| s.iter().map(|u| weights[u.index()]).sum())
    }

    fn uniform(n: usize, k: usize) -> Matroid {
        Matroid::from_fn(n, move |s| s.len() <= k).unwrap()
    }

    fn partition_01_2() -> Matroid {
        // parts {e0,e1} / {e2}, capacity 1 each
        Matroid::from_fn(3, |s| {
            s.iter().filter(|u| u.0 < 2).count() <= 1 && s.iter().filter(|u| u.0 == 2).count() <= 1
        })
        .unwrap()
    }

    #[test]
    fn marginal_of_modular_is_weight() {
        let f = modular(vec![2.0, 1.0]);
        let g = f.marginal(&ElementSet::from([0])).unwrap();
        assert_eq!(g.evaluate(&ElementSet::from([1])), 1.0);
        assert_eq!(g.evaluate(&ElementSet::new()), 0.0);
    }

    #[test]
    fn marginal_of_coverage() {
        // e0 -> {1,2}, e1 -> {2,3}
        let covers = [vec![1, 2], vec![2, 3]];
        let f = SetFunction::from_fn(2, move |s| {
            let mut items: Vec<i32> = s.iter().flat_map(|u| covers[u.index()].clone()).collect();
            items.sort();
            items.dedup();
            items.len() as f64
        });
        let g = f.marginal(&ElementSet::from([0])).unwrap();
        assert_eq!(g.evaluate(&ElementSet::from([1])), 1.0);
    }

    #[test]
    fn marginal_caches_condition_value() {
        let f = modular(vec![1.0, 2.0, 3.0]);
        let g = f.marginal(&ElementSet::from([0])).unwrap();
        assert_eq!(f.queries(), 0);
        g.evaluate(&ElementSet::from([1]));
        assert_eq!(f.queries(), 2);
        g.evaluate(&ElementSet::from([2]));
        assert_eq!(f.queries(), 3);
        assert_eq!(g.queries(), 3);
    }

    #[test]
    fn marginal_rejects_out_of_range() {
        let f = modular(vec![1.0, 2.0]);
        assert!(matches!(
            f.marginal(&ElementSet::from([5])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn marginal_composition() {
        let f = SetFunction::from_fn(4, |s| {
            (s.iter().map(|u| u.0 as f64 + 1.0).sum::<f64>()).sqrt()
        });
        let a = ElementSet::from([0]);
        let b = ElementSet::from([2]);
        let nested = f.marginal(&a).unwrap().marginal(&b).unwrap();
        let direct = f.marginal(&a.union(&b)).unwrap();
        for mask in 0..16u64 {
            let s = ElementSet::from_mask(mask);
            assert!((nested.evaluate(&s) - direct.evaluate(&s)).abs() < 1e-12);
        }
    }

    #[test]
    fn evaluate_counts_once() {
        let f = modular(vec![1.0, 1.0]);
        f.evaluate(&ElementSet::from([0, 1]));
        assert_eq!(f.queries(), 1);
        let m = uniform(2, 1);
        m.is_independent(&ElementSet::from([0]));
        assert_eq!(m.queries(), 1);
    }

    #[test]
    fn contract_uniform() {
        let m = uniform(3, 2);
        let c = m.contract(&ElementSet::from([0])).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.ground(), ElementSet::from([1, 2]));
        assert!(c.is_independent(&ElementSet::from([1])));
        assert!(!c.is_independent(&ElementSet::from([1, 2])));
        // queries land on the parent counter
        assert_eq!(m.queries(), c.queries());
    }

    #[test]
    fn contract_empty_is_identity() {
        let m = uniform(3, 2);
        let c = m.contract(&ElementSet::new()).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.ground(), m.ground());
    }

    #[test]
    fn contract_partition() {
        let m = partition_01_2();
        let c = m.contract(&ElementSet::from([0])).unwrap();
        assert!(!c.is_independent(&ElementSet::from([1])));
        assert!(c.is_independent(&ElementSet::from([2])));
    }

    #[test]
    fn contract_rejects_dependent() {
        let m = partition_01_2();
        assert!(matches!(
            m.contract(&ElementSet::from([0, 1])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn contract_composition() {
        let m = partition_01_2();
        let a = ElementSet::from([2]);
        let b = ElementSet::from([1]);
        let nested = m.contract(&a).unwrap().contract(&b).unwrap();
        let direct = m.contract(&a.union(&b)).unwrap();
        assert_eq!(nested.rank(), direct.rank());
        for mask in 0..8u64 {
            let s = ElementSet::from_mask(mask);
            assert_eq!(nested.is_independent(&s), direct.is_independent(&s));
        }
    }

    #[test]
    fn is_base_cases() {
        let m = uniform(3, 2);
        assert!(m.is_base(&ElementSet::from([0, 1])));
        assert!(!m.is_base(&ElementSet::from([0])));
        assert!(!partition_01_2().is_base(&ElementSet::from([0, 1])));
    }

    #[test]
    fn rank_zero_rejected() {
        assert!(Matroid::from_fn(3, |s| s.is_empty()).is_err());
    }
}
