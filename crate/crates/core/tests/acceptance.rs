//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use submod_core::algorithms::{
    max_weight_base, parameters, rr_greedy, split_and_grow_deterministic,
};
use submod_core::instances::{random_instance, FunctionKind, MatroidKind, RandomInstanceConfig};
use submod_core::testkit::checks::{
    check_msg_det, check_rp_bound, check_rr_expectation, check_split_balance, check_split_base,
    check_split_partition, CheckOutcome, CheckedInstance,
};
use submod_core::testkit::{
    brute_force_matching_weight, exchange_bijection, rr_greedy_exact_expectation, verify_bijection,
};
use submod_core::{
    enumerate_small_instances, max_weight_perfect_matching, Error, WeightedBipartiteGraph,
};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    passed: bool,
    summary: String,
}

impl Verdict {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Verdict {
            passed,
            summary: summary.into(),
        }
    }
}

fn suite() -> Vec<CheckedInstance> {
    enumerate_small_instances(8, 3)
        .map(|inst| CheckedInstance::new(&inst).expect("suite instance builds"))
        .collect()
}

/// Runs `check` on every instance and folds the outcomes into a verdict.
fn over_suite(
    suite: &[CheckedInstance],
    what: &str,
    check: impl Fn(&CheckedInstance) -> submod_core::Result<CheckOutcome>,
) -> Verdict {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    for ctx in suite {
        match check(ctx) {
            Ok(out) => {
                checked += out.checked;
                violations.extend(out.violations);
            }
            Err(e) => errors.push(format!("{}: {e}", ctx.label)),
        }
    }
    for v in violations.iter().take(5) {
        eprintln!("    violation {} [{}]: {}", v.label, v.check, v.detail);
    }
    for e in errors.iter().take(5) {
        eprintln!("    error {e}");
    }
    Verdict::new(
        violations.is_empty() && errors.is_empty() && checked > 0,
        format!(
            "{what}: {checked} inequalities, {} violations, {} errors",
            violations.len(),
            errors.len()
        ),
    )
}

fn closed_form() -> Verdict {
    let p = parameters(0.9).expect("x = 0.9 is valid");
    let ok = p.bound > 0.5008
        && (p.bound - 0.500870).abs() < 1e-4
        && (0.2..=0.8).contains(&p.beta)
        && (p.beta - 0.3548).abs() < 1e-4;
    Verdict::new(
        ok,
        format!(
            "bound = {:.6}, beta = {:.6}, p = {:.6}",
            p.bound, p.beta, p.p
        ),
    )
}

fn theorem_suite(suite: &[CheckedInstance]) -> Verdict {
    let min_ratio = suite
        .iter()
        .filter(|c| c.opt.value > 0.0)
        .map(|c| {
            let r = split_and_grow_deterministic(&c.f, &c.m, 0.9).expect("msg-det runs");
            r.value / c.opt.value
        })
        .fold(f64::INFINITY, f64::min);
    let v = over_suite(suite, "msg-det >= 0.5008 OPT", |c| {
        check_msg_det(c, 0.9, (5008, 10000))
    });
    Verdict::new(
        v.passed,
        format!(
            "{} instances, min ratio {min_ratio:.4}; {}",
            suite.len(),
            v.summary
        ),
    )
}

fn monte_carlo(suite: &[CheckedInstance]) -> Verdict {
    const RUNS: u64 = 10_000;
    let spread: Vec<&CheckedInstance> = suite
        .iter()
        .filter(|c| rr_greedy_exact_expectation(&c.f, &c.m).is_ok_and(|(_, t)| t.std_dev() > 1e-6))
        .collect();
    let step = (spread.len() / 10).max(1);
    let chosen: Vec<&CheckedInstance> = spread.iter().step_by(step).take(10).copied().collect();
    let mut worst: f64 = 0.0;
    let mut ok = chosen.len() == 10;
    for ctx in &chosen {
        let (exact, tree) = rr_greedy_exact_expectation(&ctx.f, &ctx.m).expect("small tree");
        let mean = (0..RUNS)
            .map(|seed| {
                ctx.f
                    .evaluate(&rr_greedy(&ctx.f, &ctx.m, seed).expect("rr runs"))
            })
            .sum::<f64>()
            / RUNS as f64;
        let se = tree.std_dev() / (RUNS as f64).sqrt();
        let z = (mean - exact).abs() / se;
        worst = worst.max(z);
        if z > 5.0 {
            ok = false;
            eprintln!(
                "    {}: mean {mean} vs exact {exact} ({z:.2} SE)",
                ctx.label
            );
        }
    }
    Verdict::new(
        ok,
        format!(
            "{} instances x {RUNS} seeds, worst deviation {worst:.2} SE",
            chosen.len()
        ),
    )
}

fn matching_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    let mut infeasible = 0;
    for case in 0..200 {
        let k = rng.gen_range(1..=7);
        let density = if case % 2 == 0 { 1.0 } else { 0.5 };
        let mut g = WeightedBipartiteGraph::new(k, k);
        for l in 0..k {
            for r in 0..k {
                if rng.gen_bool(density) {
                    let w = rng.gen_range(0..=20) as f64;
                    g.add_edge(l, r, w, submod_core::ElementId(l as u32))
                        .expect("finite weight");
                }
            }
        }
        let brute = brute_force_matching_weight(&g);
        let fast = max_weight_perfect_matching(&g);
        let agree = match (&brute, &fast) {
            (Some(b), Ok(m)) => *b == m.total_weight,
            (None, Err(Error::Infeasible(_))) => {
                infeasible += 1;
                true
            }
            _ => false,
        };
        if !agree {
            mismatches += 1;
            eprintln!(
                "    case {case}: brute {brute:?} vs hungarian {:?}",
                fast.map(|m| m.total_weight)
            );
        }
    }
    Verdict::new(
        mismatches == 0,
        format!("200 graphs (k <= 7, dense and 50% sparse), {infeasible} infeasible, {mismatches} mismatches"),
    )
}

fn exchange_pairs() -> Verdict {
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100u64 {
        let kind = if case % 2 == 0 {
            MatroidKind::Graphic
        } else {
            MatroidKind::Partition
        };
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=n.min(5));
        let cfg = RandomInstanceConfig::new(n, kind, FunctionKind::Modular).with_rank(k);
        let (_, m) = random_instance(case, &cfg)
            .and_then(|i| i.build())
            .expect("random instance");
        // small integer weights so ties occur
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=4) as f64).collect();
        let noise: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let a = max_weight_base(&m, &w);
        let b = max_weight_base(&m, &noise);
        let ok = match exchange_bijection(&a, &b, &w, &m) {
            Ok(h) => {
                let problems = verify_bijection(&h, &a, &b, &w, &m);
                for p in &problems {
                    eprintln!("    case {case}: {p}");
                }
                problems.is_empty()
            }
            Err(e) => {
                eprintln!("    case {case}: {e}");
                false
            }
        };
        failures += usize::from(!ok);
    }
    Verdict::new(
        failures == 0,
        format!("100 graphic/partition pairs (n <= 10), {failures} failures"),
    )
}

/// Mean of `value_queries / (n k^2)` over three seeds for msg-det on one random family.
fn query_constant(n: usize, k: usize, matroid: MatroidKind, function: FunctionKind) -> f64 {
    (0..3u64)
        .map(|seed| {
            let cfg = RandomInstanceConfig::new(n, matroid, function).with_rank(k);
            let (f, m) = random_instance(seed, &cfg)
                .and_then(|i| i.build())
                .expect("random instance");
            let report = split_and_grow_deterministic(&f, &m, 0.9).expect("msg-det runs");
            report.counts.value_queries as f64 / (n * k * k) as f64
        })
        .sum::<f64>()
        / 3.0
}

const GRID: [(usize, usize); 6] = [(20, 4), (20, 8), (40, 4), (40, 8), (80, 4), (80, 8)];

fn complexity() -> Verdict {
    let cells: Vec<(usize, usize, f64)> = GRID
        .iter()
        .map(|&(n, k)| {
            (
                n,
                k,
                query_constant(n, k, MatroidKind::Partition, FunctionKind::Modular),
            )
        })
        .collect();
    let lo = cells.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let hi = cells.iter().map(|c| c.2).fold(0.0, f64::max);
    let table: Vec<String> = cells
        .iter()
        .map(|(n, k, c)| format!("n{n}k{k}={c:.2}"))
        .collect();

    // every family stays under the same constant, whatever the split balance
    let mut worst: f64 = 0.0;
    for matroid in [
        MatroidKind::Uniform,
        MatroidKind::Partition,
        MatroidKind::Graphic,
    ] {
        for function in [
            FunctionKind::Modular,
            FunctionKind::Coverage,
            FunctionKind::WeightedCoverage,
            FunctionKind::ConcaveOfModular,
        ] {
            for &(n, k) in &GRID {
                worst = worst.max(query_constant(n, k, matroid, function));
            }
        }
    }
    Verdict::new(
        hi / lo < 2.0 && worst <= 2.0,
        format!(
            "partition/modular C in [{lo:.2}, {hi:.2}] (spread {:.2}x): {}; max C over all families {worst:.2}",
            hi / lo,
            table.join(" ")
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = suite();
    eprintln!(
        "suite: {} instances built in {:.1?}",
        suite.len(),
        start.elapsed()
    );

    let criteria: Vec<Criterion> = vec![
        ("closed-form parameters at x = 0.9", Box::new(closed_form)),
        (
            "deterministic split-and-grow ratio",
            Box::new(|| theorem_suite(&suite)),
        ),
        (
            "split balance over the beta grid",
            Box::new(|| {
                over_suite(&suite, "beta f(A) + (1-beta) f(B) >= w(beta) OPT", |c| {
                    check_split_balance(c, &[0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
                })
            }),
        ),
        (
            "split output is a disjoint base",
            Box::new(|| {
                over_suite(&suite, "split base", |c| {
                    check_split_base(c, &[0.0, 0.25, 0.5, 0.75, 1.0])
                })
            }),
        ),
        (
            "residual random greedy exact expectation",
            Box::new(|| {
                let exact =
                    over_suite(&suite, "E[f(A_i)] bounds", |c| check_rr_expectation(c, 200));
                let mc = monte_carlo(&suite);
                Verdict::new(
                    exact.passed && mc.passed,
                    format!("{}; {}", exact.summary, mc.summary),
                )
            }),
        ),
        (
            "residual parallel greedy bounds",
            Box::new(|| {
                over_suite(&suite, "rp_greedy over all bases", |c| {
                    check_rp_bound(c, &[0.0, 0.5, 0.9, 1.0], 20)
                })
            }),
        ),
        ("matching vs brute force", Box::new(matching_equivalence)),
        ("exchange bijection construction", Box::new(exchange_pairs)),
        (
            "split partition witness",
            Box::new(|| {
                over_suite(&suite, "witness per (split, optimal base)", |c| {
                    let p = parameters(0.9).expect("valid x").p;
                    check_split_partition(c, &[0.0, 0.25, p, 0.5, 0.75, 1.0])
                })
            }),
        ),
        ("value queries scale as n k^2", Box::new(complexity)),
    ];

    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = run();
        all &= verdict.passed;
        println!(
            "criterion {:>2} {} {name}: {} ({:.1?})",
            i + 1,
            if verdict.passed { "PASS" } else { "FAIL" },
            verdict.summary,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} in {:.1?}",
        if all { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
