//! Approximation algorithms for monotone submodular maximization over a matroid.
//!
//! * [`classical_greedy`]: the ½-approximate baseline;
//! * [`split`]: grows two disjoint sets into a base, balancing a `p`-weighted comparison;
//! * [`rr_greedy`] / [`rp_greedy`]: Residual Random Greedy and its deterministic, matching-based
//!   counterpart Residual Parallel Greedy;
//! * [`split_and_grow`] / [`split_and_grow_deterministic`]: split, then grow each side into a
//!   base with the residual greedy of choice, and keep the better one. The deterministic variant
//!   is a 0.5008-approximation at the default `x = 0.9`.
//!
//! [`solve`] dispatches by name and handles rank-1 matroids by exhaustive search.

mod greedy;
mod params;
mod residual;
mod split;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Matroid, OracleCounts, SetFunction};
use crate::set::ElementSet;

pub use greedy::{best_singleton, classical_greedy, max_weight_base};
pub use params::{
    g, parameters, split_coefficient, split_probability, Parameters, BETA_RANGE, DEFAULT_X,
};
pub use residual::{residual_candidate_base, rp_greedy, rr_greedy, rr_greedy_with_rng};
pub use split::{split, SplitResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "rrgreedy")]
    RrGreedy,
    #[serde(rename = "rpgreedy")]
    RpGreedy,
    #[serde(rename = "msg")]
    SplitAndGrow,
    #[serde(rename = "msg-det")]
    SplitAndGrowDeterministic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Greedy,
        Algorithm::Split,
        Algorithm::RrGreedy,
        Algorithm::RpGreedy,
        Algorithm::SplitAndGrow,
        Algorithm::SplitAndGrowDeterministic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Split => "split",
            Algorithm::RrGreedy => "rrgreedy",
            Algorithm::RpGreedy => "rpgreedy",
            Algorithm::SplitAndGrow => "msg",
            Algorithm::SplitAndGrowDeterministic => "msg-det",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::RrGreedy | Algorithm::SplitAndGrow)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub x: f64,
    /// Split probability; `None` derives it from `x`.
    pub p: Option<f64>,
    pub seed: u64,
    /// Starting base for `rpgreedy`; defaults to the lexicographically first base.
    pub rp_base: Option<ElementSet>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            x: DEFAULT_X,
            p: None,
            seed: 0,
            rp_base: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub solution: ElementSet,
    pub value: f64,
    pub counts: OracleCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    /// The split probability actually used, when it differs from `parameters.p` or there
    /// are no parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Set when a rank-1 matroid was solved exhaustively instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exhaustive: bool,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
}

impl RunReport {
    /// The report with timing cleared, for determinism comparisons.
    pub fn without_timing(&self) -> RunReport {
        RunReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

struct RunMeta {
    parameters: Option<Parameters>,
    split_p: Option<f64>,
    split: Option<SplitResult>,
    seed: Option<u64>,
    exhaustive: bool,
}

impl RunMeta {
    fn plain() -> Self {
        RunMeta {
            parameters: None,
            split_p: None,
            split: None,
            seed: None,
            exhaustive: false,
        }
    }
}

fn finish(
    algorithm: Algorithm,
    f: &SetFunction,
    m: &Matroid,
    start: (OracleCounts, Instant),
    solution: ElementSet,
    meta: RunMeta,
) -> Result<RunReport> {
    let counts = OracleCounts::of(f, m).since(start.0);
    let elapsed = start.1.elapsed();
    if !m.with_fresh_counter().is_base(&solution) {
        return Err(Error::InternalInvariant(format!(
            "{algorithm} returned {solution:?}, which is not a base"
        )));
    }
    let value = f.with_fresh_counter().evaluate(&solution);
    Ok(RunReport {
        algorithm,
        solution,
        value,
        counts,
        parameters: meta.parameters,
        split_p: meta.split_p,
        split: meta.split,
        seed: meta.seed,
        exhaustive: meta.exhaustive,
        elapsed,
    })
}

fn begin(f: &SetFunction, m: &Matroid) -> (OracleCounts, Instant) {
    (OracleCounts::of(f, m), Instant::now())
}

fn exhaustive_report(algorithm: Algorithm, f: &SetFunction, m: &Matroid) -> Result<RunReport> {
    let start = begin(f, m);
    let solution = best_singleton(f, m);
    let meta = RunMeta {
        exhaustive: true,
        ..RunMeta::plain()
    };
    finish(algorithm, f, m, start, solution, meta)
}

fn resolve_p(x: f64, p: Option<f64>) -> Result<(Parameters, f64)> {
    let params = parameters(x)?;
    let p = match p {
        Some(p) if !(0.0..=1.0).contains(&p) => {
            return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")))
        }
        Some(p) => p,
        None => params.p,
    };
    Ok((params, p))
}

/// Shared driver of both Split-and-Grow variants. `grow(f(·|S), M/S, other_side, seed)` must
/// return a base of `M/S`.
fn split_and_grow_with<G>(
    algorithm: Algorithm,
    f: &SetFunction,
    m: &Matroid,
    x: f64,
    p: Option<f64>,
    seed: Option<u64>,
    grow: G,
) -> Result<RunReport>
where
    G: Fn(&SetFunction, &Matroid, &ElementSet, u64) -> Result<ElementSet>,
{
    let (params, p_used) = resolve_p(x, p)?;
    if m.rank() == 1 {
        return exhaustive_report(algorithm, f, m);
    }
    let start = begin(f, m);
    let halves = split(f, m, p_used)?;
    let base_seed = seed.unwrap_or(0);
    let grow_a = grow(
        &f.marginal(&halves.a)?,
        &m.contract(&halves.a)?,
        &halves.b,
        base_seed,
    )?;
    let grow_b = grow(
        &f.marginal(&halves.b)?,
        &m.contract(&halves.b)?,
        &halves.a,
        base_seed.wrapping_add(1),
    )?;
    let sol_a = halves.a.union(&grow_a);
    let sol_b = halves.b.union(&grow_b);
    let solution = if f.evaluate(&sol_a) >= f.evaluate(&sol_b) {
        sol_a
    } else {
        sol_b
    };
    let meta = RunMeta {
        parameters: Some(params),
        split_p: (p_used != params.p).then_some(p_used),
        split: Some(halves),
        seed,
        exhaustive: false,
    };
    finish(algorithm, f, m, start, solution, meta)
}

/// Matroid Split and Grow with Residual Random Greedy. The two growth runs use seeds
/// `seed` and `seed + 1`.
pub fn split_and_grow(f: &SetFunction, m: &Matroid, x: f64, seed: u64) -> Result<RunReport> {
    split_and_grow_p(f, m, x, None, seed)
}

/// [`split_and_grow`] with an explicit split probability.
pub fn split_and_grow_p(
    f: &SetFunction,
    m: &Matroid,
    x: f64,
    p: Option<f64>,
    seed: u64,
) -> Result<RunReport> {
    split_and_grow_with(
        Algorithm::SplitAndGrow,
        f,
        m,
        x,
        p,
        Some(seed),
        |f, m, _, s| rr_greedy(f, m, s),
    )
}

/// Deterministic Matroid Split and Grow: each side grows with Residual Parallel Greedy
/// started from the other side, which is a base of the contracted matroid.
pub fn split_and_grow_deterministic(f: &SetFunction, m: &Matroid, x: f64) -> Result<RunReport> {
    split_and_grow_deterministic_p(f, m, x, None)
}

pub fn split_and_grow_deterministic_p(
    f: &SetFunction,
    m: &Matroid,
    x: f64,
    p: Option<f64>,
) -> Result<RunReport> {
    split_and_grow_with(
        Algorithm::SplitAndGrowDeterministic,
        f,
        m,
        x,
        p,
        None,
        |f, m, other, _| rp_greedy(f, m, other),
    )
}

/// Runs `algorithm` and reports the solution, its value and the oracle queries spent.
///
/// Rank-1 matroids are solved optimally by trying every singleton, whatever the algorithm.
/// For `split` the reported solution is the base `A ∪ B`, with the two halves in `split`.
pub fn solve(
    f: &SetFunction,
    m: &Matroid,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<RunReport> {
    if let Some(p) = options.p {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
        }
    }
    if m.rank() == 1 {
        return exhaustive_report(algorithm, f, m);
    }
    match algorithm {
        Algorithm::Greedy => {
            let start = begin(f, m);
            let solution = classical_greedy(f, m);
            finish(algorithm, f, m, start, solution, RunMeta::plain())
        }
        Algorithm::Split => {
            let (params, p) = resolve_p(options.x, options.p)?;
            let start = begin(f, m);
            let halves = split(f, m, p)?;
            let meta = RunMeta {
                parameters: Some(params),
                split_p: (p != params.p).then_some(p),
                split: Some(halves.clone()),
                ..RunMeta::plain()
            };
            finish(algorithm, f, m, start, halves.union(), meta)
        }
        Algorithm::RrGreedy => {
            let start = begin(f, m);
            let solution = rr_greedy(f, m, options.seed)?;
            let meta = RunMeta {
                seed: Some(options.seed),
                ..RunMeta::plain()
            };
            finish(algorithm, f, m, start, solution, meta)
        }
        Algorithm::RpGreedy => {
            let base = match &options.rp_base {
                Some(b) => b.clone(),
                None => max_weight_base(&m.with_fresh_counter(), &vec![0.0; m.ground_size()]),
            };
            let start = begin(f, m);
            let solution = rp_greedy(f, m, &base)?;
            finish(algorithm, f, m, start, solution, RunMeta::plain())
        }
        Algorithm::SplitAndGrow => split_and_grow_p(f, m, options.x, options.p, options.seed),
        Algorithm::SplitAndGrowDeterministic => {
            split_and_grow_deterministic_p(f, m, options.x, options.p)
        }
    }
}
