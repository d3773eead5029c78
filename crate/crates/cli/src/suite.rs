use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use submod_core::algorithms::{parameters, solve, Algorithm, SolveOptions};
use submod_core::testkit::checks::{
    ratio_at_least, run_all_checks, CheckConfig, CheckedInstance, Violation,
};
use submod_core::{enumerate_small_instances, Instance};

use crate::run::ratio;
use crate::{thread_pool, Failure, SuiteArgs, EXIT_OK, EXIT_VIOLATION};

const GREEDY_RATIO: &str = "greedy_ratio";

/// One algorithm run on one suite instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub value: f64,
    pub opt: f64,
    pub ratio: f64,
    pub value_queries: u64,
    pub independence_queries: u64,
    pub x: Option<f64>,
    pub p: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub min_ratio: f64,
    pub mean_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub instances: usize,
    pub algorithms: Vec<AlgorithmSummary>,
    pub checks: Vec<CheckSummary>,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub max_n: usize,
    pub max_k: usize,
    pub x: f64,
    pub rows: Vec<SuiteRow>,
    pub summary: SuiteSummary,
}

struct InstanceResult {
    rows: Vec<SuiteRow>,
    checks: Vec<(String, usize, Vec<Violation>)>,
}

fn run_instance(
    inst: &Instance,
    args: &SuiteArgs,
    config: &CheckConfig,
) -> Result<InstanceResult, Failure> {
    let ctx = CheckedInstance::new(inst)?;
    let options = SolveOptions {
        x: args.x,
        p: args.p.value(),
        seed: args.seed,
        rp_base: None,
    };
    let mut rows = Vec::with_capacity(Algorithm::ALL.len());
    let mut greedy_violations = Vec::new();
    for algorithm in Algorithm::ALL {
        let report = solve(&ctx.f, &ctx.m, algorithm, &options)?;
        if algorithm == Algorithm::Greedy
            && !ratio_at_least(report.value, ctx.opt.value, 1, 2, ctx.integral)
        {
            greedy_violations.push(Violation {
                label: ctx.label.clone(),
                check: GREEDY_RATIO.into(),
                detail: format!(
                    "greedy value {} < OPT/2 = {}",
                    report.value,
                    ctx.opt.value / 2.0
                ),
            });
        }
        rows.push(SuiteRow {
            label: ctx.label.clone(),
            n: inst.n,
            k: ctx.rank(),
            algorithm,
            value: report.value,
            opt: ctx.opt.value,
            ratio: ratio(report.value, ctx.opt.value),
            value_queries: report.counts.value_queries,
            independence_queries: report.counts.independence_queries,
            x: report.parameters.map(|p| p.x),
            p: report.split_p.or(report.parameters.map(|p| p.p)),
            seed: report.seed,
        });
    }
    let mut checks: Vec<(String, usize, Vec<Violation>)> = run_all_checks(&ctx, config)?
        .into_iter()
        .map(|(name, out)| (name.to_string(), out.checked, out.violations))
        .collect();
    checks.push((GREEDY_RATIO.into(), 1, greedy_violations));
    Ok(InstanceResult { rows, checks })
}

fn summarize(rows: &[SuiteRow], results: &[InstanceResult], instances: usize) -> SuiteSummary {
    let algorithms = Algorithm::ALL
        .into_iter()
        .map(|algorithm| {
            let ratios: Vec<f64> = rows
                .iter()
                .filter(|r| r.algorithm == algorithm)
                .map(|r| r.ratio)
                .collect();
            AlgorithmSummary {
                algorithm,
                runs: ratios.len(),
                min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
                mean_ratio: ratios.iter().sum::<f64>() / ratios.len().max(1) as f64,
            }
        })
        .collect();
    let mut per_check: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut violations = Vec::new();
    for r in results {
        for (name, checked, found) in &r.checks {
            let entry = per_check.entry(name.clone()).or_default();
            entry.0 += checked;
            entry.1 += found.len();
            violations.extend(found.iter().cloned());
        }
    }
    violations.sort();
    SuiteSummary {
        instances,
        algorithms,
        checks: per_check
            .into_iter()
            .map(|(check, (checked, violations))| CheckSummary {
                check,
                checked,
                violations,
            })
            .collect(),
        violation_count: violations.len(),
        violations,
    }
}

pub(crate) fn cmd_suite(
    args: &SuiteArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    if args.max_k < 2 {
        return Err(Failure::usage(format!(
            "--max-k must be at least 2 (every suite instance needs rank >= 2), got {}",
            args.max_k
        )));
    }
    let params = parameters(args.x)?;
    let instances: Vec<Instance> = enumerate_small_instances(args.max_n, args.max_k).collect();
    if instances.is_empty() {
        return Err(Failure::usage(format!(
            "no instances for --max-n {} --max-k {}",
            args.max_n, args.max_k
        )));
    }
    let mut config = CheckConfig {
        x: args.x,
        msg_seeds: args.msg_seeds,
        ..CheckConfig::default()
    };
    config.split_ps[2] = params.p;

    let pool = thread_pool(args.jobs)?;
    let results: Vec<InstanceResult> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(inst, args, &config))
            .collect::<Result<_, _>>()
    })?;

    let mut rows: Vec<SuiteRow> = results
        .iter()
        .flat_map(|r| r.rows.iter().cloned())
        .collect();
    rows.sort_by(|a, b| a.label.cmp(&b.label).then(a.algorithm.cmp(&b.algorithm)));
    let summary = summarize(&rows, &results, instances.len());
    let report = SuiteReport {
        max_n: args.max_n,
        max_k: args.max_k,
        x: args.x,
        rows,
        summary,
    };

    std::fs::create_dir_all(&args.out)?;
    let mut csv = csv::Writer::from_path(args.out.join("suite.csv"))?;
    for row in &report.rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    std::fs::write(args.out.join("suite.json"), format!("{json}\n"))?;

    write_summary(&report, stdout)?;
    if report.summary.violation_count > 0 {
        writeln!(stderr, "violations (instance, check):")?;
        for v in &report.summary.violations {
            writeln!(stderr, "  {} {}: {}", v.label, v.check, v.detail)?;
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn write_summary(report: &SuiteReport, out: &mut dyn Write) -> std::io::Result<()> {
    let s = &report.summary;
    writeln!(out, "instances: {}", s.instances)?;
    writeln!(
        out,
        "{:<10} {:>6} {:>10} {:>10}",
        "algorithm", "runs", "min_ratio", "mean_ratio"
    )?;
    for a in &s.algorithms {
        writeln!(
            out,
            "{:<10} {:>6} {:>10.4} {:>10.4}",
            a.algorithm.name(),
            a.runs,
            a.min_ratio,
            a.mean_ratio
        )?;
    }
    writeln!(out, "{:<16} {:>8} {:>10}", "check", "checked", "violations")?;
    for c in &s.checks {
        writeln!(out, "{:<16} {:>8} {:>10}", c.check, c.checked, c.violations)?;
    }
    writeln!(
        out,
        "suite: {} ({} violations)",
        if s.violation_count == 0 {
            "PASS"
        } else {
            "FAIL"
        },
        s.violation_count
    )
}
