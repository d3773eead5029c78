//! Monotone submodular maximization subject to a matroid constraint.
//!
//! The crate provides value and independence oracles ([`SetFunction`], [`Matroid`]), a family
//! of instance generators, a maximum-weight perfect matching routine, the approximation
//! algorithms (classical greedy, Split, Residual Random/Parallel Greedy and both variants of
//! Split and Grow) and a [`testkit`] of exact brute-force oracles for verification.
//!
//! ```
//! use submod_core::{solve, Algorithm, Instance, SolveOptions};
//!
//! let inst = Instance::from_json(r#"{"n":3,
//!     "matroid":{"kind":"uniform","k":2},
//!     "function":{"kind":"coverage","covers":[[1,2],[2,3],[3]]}}"#).unwrap();
//! let (f, m) = inst.build().unwrap();
//! let report = solve(&f, &m, Algorithm::SplitAndGrowDeterministic, &SolveOptions::default()).unwrap();
//! assert_eq!(report.value, 3.0);
//! ```

pub mod algorithms;
pub mod error;
pub mod instances;
pub mod matching;
pub mod oracle;
pub mod set;
pub mod testkit;

pub use algorithms::{
    classical_greedy, max_weight_base, parameters, rp_greedy, rr_greedy, solve, split,
    split_and_grow, split_and_grow_deterministic, Algorithm, Parameters, RunReport, SolveOptions,
    SplitResult,
};
pub use error::{Error, Result};
pub use instances::{
    enumerate_small_instances, random_instance, FunctionSpec, Instance, MatroidSpec,
};
pub use matching::{max_weight_perfect_matching, Matching, WeightedBipartiteGraph};
pub use oracle::{IndependenceOracle, Matroid, OracleCounts, SetFunction, ValueOracle};
pub use set::{ElementId, ElementSet};
