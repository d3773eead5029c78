//! Brute-force oracles and guarantee checkers used to verify the algorithms on small
//! instances: exact optimum, exact Residual Random Greedy expectation, the weighted exchange
//! bijection, the split partition witness and axiom validators.

pub mod checks;
mod exchange;
mod expectation;
mod opt;
mod partition;
mod validate;

pub use exchange::{exchange_bijection, verify_bijection, BijectionWitness};
pub use expectation::{
    expectation_leaf_count, rr_greedy_exact_expectation, rr_greedy_exact_expectation_with_budget,
    ExpectationLeaf, ExpectationNode, ExpectationTree, DEFAULT_LEAF_BUDGET,
};
pub use opt::{
    best_of, brute_force_matching_weight, brute_force_opt, brute_force_opt_with_budget,
    enumerate_bases, Optimum, DEFAULT_BASE_BUDGET,
};
pub use partition::{split_partition_witness, PartitionWitness};
pub use validate::{
    validate_matroid_axioms, validate_monotone_submodular, ValidationReport, MAX_VALIDATION_N,
};
