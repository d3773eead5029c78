//! Per-instance guarantee checks shared by the acceptance tests and the `suite` command.
//!
//! Every check compares an algorithm's behavior against the brute-force optimum and reports
//! violations instead of panicking, so a runner can aggregate them across many instances.

use serde::{Deserialize, Serialize};

use super::expectation::{expectation_leaf_count, rr_greedy_exact_expectation};
use super::opt::{best_of, enumerate_bases, Optimum, DEFAULT_BASE_BUDGET};
use super::partition::split_partition_witness;
use crate::algorithms::{
    g, parameters, rp_greedy, split, split_and_grow, split_and_grow_deterministic,
    split_coefficient, split_probability, DEFAULT_X,
};
use crate::error::Result;
use crate::instances::Instance;
use crate::oracle::{Matroid, SetFunction};
use crate::set::ElementSet;

pub const TOLERANCE: f64 = 1e-9;

pub const SPLIT_BASE: &str = "split_base";
pub const SPLIT_BALANCE: &str = "split_balance";
pub const RR_EXPECTATION: &str = "rr_expectation";
pub const RR_ROUNDS: &str = "rr_rounds";
pub const RR_PAIRS: &str = "rr_pairs";
pub const RP_BOUND: &str = "rp_bound";
pub const SPLIT_PARTITION: &str = "split_partition";
pub const MSG_DET_RATIO: &str = "msg_det_ratio";
pub const MSG_MEAN: &str = "msg_mean";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub check: String,
    pub detail: String,
}

/// Result of one check on one instance. `checked` counts the individual inequalities tested
/// (zero when the instance is outside the check's budget).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckOutcome {
    fn test(
        &mut self,
        ctx: &CheckedInstance,
        check: &str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                label: ctx.label.clone(),
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, ctx: &CheckedInstance, check: &str, detail: String) {
        self.test(ctx, check, false, || detail);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An instance together with its exact optimum and full base list.
#[derive(Clone, Debug)]
pub struct CheckedInstance {
    pub label: String,
    /// Function values are integers, so ratio checks can be done exactly.
    pub integral: bool,
    pub f: SetFunction,
    pub m: Matroid,
    pub opt: Optimum,
    pub bases: Vec<ElementSet>,
}

impl CheckedInstance {
    pub fn new(instance: &Instance) -> Result<Self> {
        let (f, m) = instance.build()?;
        Self::from_parts(
            instance.label.clone(),
            instance.function.is_integral(),
            f,
            m,
        )
    }

    pub fn from_parts(label: String, integral: bool, f: SetFunction, m: Matroid) -> Result<Self> {
        let bases = enumerate_bases(&m, DEFAULT_BASE_BUDGET)?;
        let opt = best_of(&f, &bases)?;
        Ok(CheckedInstance {
            label,
            integral,
            f,
            m,
            opt,
            bases,
        })
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    /// Every base attaining the optimum.
    pub fn optimal_bases(&self) -> Vec<ElementSet> {
        self.bases
            .iter()
            .filter(|b| self.f.evaluate(b) == self.opt.value)
            .cloned()
            .collect()
    }
}

/// `value ≥ (num/den)·opt`, in exact integer arithmetic when both values are integers.
pub fn ratio_at_least(value: f64, opt: f64, num: i128, den: i128, integral: bool) -> bool {
    let exact = |v: f64| (v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i128);
    match (integral, exact(value), exact(opt)) {
        (true, Some(v), Some(o)) => v * den >= num * o,
        _ => value >= num as f64 / den as f64 * opt,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub split_ps: Vec<f64>,
    pub betas: Vec<f64>,
    pub leaf_limit: usize,
    pub base_limit: usize,
    pub rr_pair_xs: Vec<f64>,
    pub rp_xs: Vec<f64>,
    pub x: f64,
    /// Certified ratio for `msg-det` as `num / den`.
    pub ratio: (i128, i128),
    /// Seeds for the randomized mean check; zero skips it.
    pub msg_seeds: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            split_ps: vec![
                0.0,
                0.25,
                parameters(DEFAULT_X).expect("default x").p,
                0.5,
                0.75,
                1.0,
            ],
            betas: vec![0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8],
            leaf_limit: 200,
            base_limit: 20,
            rr_pair_xs: vec![0.0, 0.25, 0.5, 0.75, 0.9, 1.0],
            rp_xs: vec![0.0, 0.25, 0.5, 0.75, 0.9, 1.0],
            x: DEFAULT_X,
            ratio: (5008, 10000),
            msg_seeds: 100,
        }
    }
}

/// Split output halves are disjoint and their union is a base.
pub fn check_split_base(ctx: &CheckedInstance, ps: &[f64]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for &p in ps {
        let r = split(&ctx.f, &ctx.m, p)?;
        out.test(
            ctx,
            SPLIT_BASE,
            r.a.is_disjoint(&r.b) && ctx.m.is_base(&r.union()),
            || format!("p = {p}: A = {:?}, B = {:?}", r.a, r.b),
        );
    }
    Ok(out)
}

/// `β·f(A) + (1-β)·f(B) ≥ w(β)·OPT` for the split run with the probability derived from `β`.
pub fn check_split_balance(ctx: &CheckedInstance, betas: &[f64]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for &beta in betas {
        let p = split_probability(beta)?;
        let r = split(&ctx.f, &ctx.m, p)?;
        let lhs = beta * ctx.f.evaluate(&r.a) + (1.0 - beta) * ctx.f.evaluate(&r.b);
        let rhs = split_coefficient(beta) * ctx.opt.value;
        out.test(ctx, SPLIT_BALANCE, lhs >= rhs - TOLERANCE, || {
            format!("beta = {beta}: {lhs} < {rhs}")
        });
    }
    Ok(out)
}

/// Exact Residual Random Greedy expectation: the tree is a distribution over bases,
/// `E[f(A_k)] ≥ OPT/2`, and every round satisfies `E[f(A_i)] ≥ (g(i/k) + δ_i)·OPT`.
/// Skipped when the tree would have more than `leaf_limit` leaves.
pub fn check_rr_expectation(ctx: &CheckedInstance, leaf_limit: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    if expectation_leaf_count(&ctx.m) > leaf_limit {
        return Ok(out);
    }
    let (expected, tree) = rr_greedy_exact_expectation(&ctx.f, &ctx.m)?;
    let total = tree.total_probability();
    out.test(ctx, RR_EXPECTATION, (total - 1.0).abs() <= 1e-12, || {
        format!("leaf probabilities sum to {total}")
    });
    for leaf in &tree.leaves {
        out.test(ctx, RR_EXPECTATION, ctx.m.is_base(&leaf.set), || {
            format!("leaf {:?} is not a base", leaf.set)
        });
    }
    out.test(
        ctx,
        RR_EXPECTATION,
        expected >= ctx.opt.value / 2.0 - TOLERANCE,
        || format!("E[f(A)] = {expected} < OPT/2 = {}", ctx.opt.value / 2.0),
    );
    let k = ctx.rank();
    for (i, &e) in tree.expected_by_round.iter().enumerate() {
        let delta = if i > 0 && i < k {
            1.0 / (2.0 * (k * k) as f64)
        } else {
            0.0
        };
        let bound = (g(i as f64 / k as f64) + delta) * ctx.opt.value;
        out.test(ctx, RR_ROUNDS, e >= bound - TOLERANCE, || {
            format!("round {i}: E[f(A_i)] = {e} < {bound}")
        });
    }
    Ok(out)
}

/// `3·E[f(A)] ≥ (1 + g(x))·f(T₁) + (1 - x)·f(T₂ | T₁)` for all base pairs and every `x`.
/// Skipped on instances with more than `base_limit` bases or `leaf_limit` leaves.
pub fn check_rr_pairs(
    ctx: &CheckedInstance,
    xs: &[f64],
    base_limit: usize,
    leaf_limit: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    if ctx.bases.len() > base_limit || expectation_leaf_count(&ctx.m) > leaf_limit {
        return Ok(out);
    }
    let (expected, _) = rr_greedy_exact_expectation(&ctx.f, &ctx.m)?;
    let values: Vec<f64> = ctx.bases.iter().map(|b| ctx.f.evaluate(b)).collect();
    for (t1, &f1) in ctx.bases.iter().zip(&values) {
        for t2 in &ctx.bases {
            let gain = ctx.f.evaluate(&t1.union(t2)) - f1;
            for &x in xs {
                let rhs = (1.0 + g(x)) * f1 + (1.0 - x) * gain;
                out.test(ctx, RR_PAIRS, 3.0 * expected >= rhs - TOLERANCE, || {
                    format!(
                        "x = {x}, T1 = {t1:?}, T2 = {t2:?}: 3E = {} < {rhs}",
                        3.0 * expected
                    )
                });
            }
        }
    }
    Ok(out)
}

/// For every starting base `B`, Residual Parallel Greedy returns `A` with `f(A) ≥ OPT/2` and
/// `3·f(A) ≥ (1 + g(x))·OPT + (1 - x)·f(B | OPT)` for every `x`.
pub fn check_rp_bound(
    ctx: &CheckedInstance,
    xs: &[f64],
    base_limit: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    if ctx.bases.len() > base_limit {
        return Ok(out);
    }
    let t = &ctx.opt.witness;
    let opt = ctx.opt.value;
    for b in &ctx.bases {
        let a = rp_greedy(&ctx.f, &ctx.m, b)?;
        let fa = ctx.f.evaluate(&a);
        out.test(
            ctx,
            RP_BOUND,
            ctx.m.is_base(&a) && fa >= opt / 2.0 - TOLERANCE,
            || {
                format!(
                    "B = {b:?}: output {a:?} has value {fa} < OPT/2 = {}",
                    opt / 2.0
                )
            },
        );
        let gain = ctx.f.evaluate(&b.union(t)) - opt;
        for &x in xs {
            let rhs = (1.0 + g(x)) * opt + (1.0 - x) * gain;
            out.test(ctx, RP_BOUND, 3.0 * fa >= rhs - TOLERANCE, || {
                format!("B = {b:?}, x = {x}: 3 f(A) = {} < {rhs}", 3.0 * fa)
            });
        }
    }
    Ok(out)
}

/// A partition witness exists for every split output (one per `p`) and every optimal base.
pub fn check_split_partition(ctx: &CheckedInstance, ps: &[f64]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    let optimal = ctx.optimal_bases();
    for &p in ps {
        let r = split(&ctx.f, &ctx.m, p)?;
        for t in &optimal {
            match split_partition_witness(&r.a, &r.b, t, &ctx.f, &ctx.m) {
                Ok(_) => out.test(ctx, SPLIT_PARTITION, true, String::new),
                Err(e) => out.fail(ctx, SPLIT_PARTITION, format!("p = {p}, T = {t:?}: {e}")),
            }
        }
    }
    Ok(out)
}

/// The deterministic Split and Grow attains `num/den` of the optimum.
pub fn check_msg_det(
    ctx: &CheckedInstance,
    x: f64,
    (num, den): (i128, i128),
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    let report = split_and_grow_deterministic(&ctx.f, &ctx.m, x)?;
    let ok = ratio_at_least(report.value, ctx.opt.value, num, den, ctx.integral);
    out.test(ctx, MSG_DET_RATIO, ok, || {
        format!(
            "value {} < {num}/{den} of OPT {}",
            report.value, ctx.opt.value
        )
    });
    Ok(out)
}

/// The randomized Split and Grow averages at least half the optimum over `seeds` runs.
pub fn check_msg_mean(ctx: &CheckedInstance, x: f64, seeds: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    if seeds == 0 {
        return Ok(out);
    }
    let mut total = 0.0;
    for seed in 0..seeds {
        total += split_and_grow(&ctx.f, &ctx.m, x, seed)?.value;
    }
    let mean = total / seeds as f64;
    out.test(
        ctx,
        MSG_MEAN,
        mean >= ctx.opt.value / 2.0 - TOLERANCE,
        || {
            format!(
                "mean over {seeds} seeds = {mean} < OPT/2 = {}",
                ctx.opt.value / 2.0
            )
        },
    );
    Ok(out)
}

/// Runs every check with `config`, in a fixed order.
pub fn run_all_checks(
    ctx: &CheckedInstance,
    config: &CheckConfig,
) -> Result<Vec<(&'static str, CheckOutcome)>> {
    Ok(vec![
        (SPLIT_BASE, check_split_base(ctx, &config.split_ps)?),
        (SPLIT_BALANCE, check_split_balance(ctx, &config.betas)?),
        (
            RR_EXPECTATION,
            check_rr_expectation(ctx, config.leaf_limit)?,
        ),
        (
            RR_PAIRS,
            check_rr_pairs(
                ctx,
                &config.rr_pair_xs,
                config.base_limit,
                config.leaf_limit,
            )?,
        ),
        (
            RP_BOUND,
            check_rp_bound(ctx, &config.rp_xs, config.base_limit)?,
        ),
        (
            SPLIT_PARTITION,
            check_split_partition(ctx, &config.split_ps)?,
        ),
        (MSG_DET_RATIO, check_msg_det(ctx, config.x, config.ratio)?),
        (MSG_MEAN, check_msg_mean(ctx, config.x, config.msg_seeds)?),
    ])
}
