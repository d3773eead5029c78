use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use submod_core::algorithms::{parameters, split_and_grow_deterministic};
use submod_core::instances::{random_instance, RandomInstanceConfig};
use submod_core::Error;

use crate::{thread_pool, ComplexityArgs, Failure, EXIT_OK};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub value_queries: u64,
    pub independence_queries: u64,
    /// `value_queries / (n k^2)`
    pub constant: f64,
}

/// Mean fitted constant of one `(n, k)` cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityCell {
    pub n: usize,
    pub k: usize,
    pub runs: usize,
    pub mean_value_queries: f64,
    pub constant: f64,
}

fn measure(
    args: &ComplexityArgs,
    n: usize,
    k: usize,
    seed: u64,
) -> Result<Option<ComplexityRow>, Error> {
    let cfg = RandomInstanceConfig::new(n, args.matroid.into(), args.function.into()).with_rank(k);
    let instance = match random_instance(seed, &cfg) {
        Ok(i) => i,
        Err(Error::InvalidArgument(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (f, m) = instance.build()?;
    let report = split_and_grow_deterministic(&f, &m, args.x)?;
    Ok(Some(ComplexityRow {
        n,
        k,
        seed,
        value_queries: report.counts.value_queries,
        independence_queries: report.counts.independence_queries,
        constant: report.counts.value_queries as f64 / (n * k * k) as f64,
    }))
}

pub(crate) fn cmd_complexity(
    args: &ComplexityArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    if args.n_grid.is_empty() || args.k_grid.is_empty() || args.seeds == 0 {
        return Err(Failure::usage(
            "the n grid, k grid and seed count must all be non-empty",
        ));
    }
    parameters(args.x)?;
    let jobs: Vec<(usize, usize, u64)> = args
        .n_grid
        .iter()
        .flat_map(|&n| {
            args.k_grid
                .iter()
                .flat_map(move |&k| (0..args.seeds).map(move |s| (n, k, s)))
        })
        .collect();
    let pool = thread_pool(args.jobs)?;
    let measured: Vec<((usize, usize, u64), Option<ComplexityRow>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, k, s)| measure(args, n, k, s).map(|r| ((n, k, s), r)))
            .collect::<Result<_, _>>()
    })?;

    let mut rows = Vec::new();
    for ((n, k, seed), row) in measured {
        match row {
            Some(r) => rows.push(r),
            None => writeln!(
                stderr,
                "note: skipped n = {n}, k = {k}, seed = {seed} (no instance of that rank)"
            )?,
        }
    }
    if rows.is_empty() {
        return Err(Failure::usage("every grid cell was infeasible"));
    }

    let mut cells: Vec<ComplexityCell> = Vec::new();
    for r in &rows {
        match cells.iter_mut().find(|c| c.n == r.n && c.k == r.k) {
            Some(c) => {
                c.runs += 1;
                c.mean_value_queries += r.value_queries as f64;
                c.constant += r.constant;
            }
            None => cells.push(ComplexityCell {
                n: r.n,
                k: r.k,
                runs: 1,
                mean_value_queries: r.value_queries as f64,
                constant: r.constant,
            }),
        }
    }
    for c in &mut cells {
        c.mean_value_queries /= c.runs as f64;
        c.constant /= c.runs as f64;
    }

    let mut csv = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        csv.serialize(r)?;
    }
    let table = csv
        .into_inner()
        .map_err(|e| Failure::usage(e.to_string()))?;
    stdout.write_all(&table)?;
    if let Some(path) = &args.out {
        std::fs::write(path, &table)?;
    }

    for c in &cells {
        writeln!(
            stderr,
            "n = {:>4}, k = {:>3}: mean value queries {:>10.1}, C = {:.3}",
            c.n, c.k, c.mean_value_queries, c.constant
        )?;
    }
    let lo = cells
        .iter()
        .map(|c| c.constant)
        .fold(f64::INFINITY, f64::min);
    let hi = cells.iter().map(|c| c.constant).fold(0.0, f64::max);
    writeln!(
        stderr,
        "C ranges over [{lo:.3}, {hi:.3}], spread {:.2}x",
        hi / lo
    )?;
    Ok(EXIT_OK)
}
