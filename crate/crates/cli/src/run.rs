use std::io::Write;

use serde::{Deserialize, Serialize};
use submod_core::algorithms::{solve, Algorithm, RunReport, SolveOptions};
use submod_core::testkit::brute_force_opt;
use submod_core::{ElementSet, Instance};

use crate::{Failure, RunArgs, EXIT_OK};

/// What `submod run` prints: the algorithm's report plus instance metadata and, with `--opt`,
/// the exact optimum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub label: String,
    pub n: usize,
    pub k: usize,
    #[serde(flatten)]
    pub report: RunReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_witness: Option<ElementSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

/// `value / opt`, with `0 / 0 = 1`.
pub fn ratio(value: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        value / opt
    } else if value == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

pub(crate) fn cmd_run(args: &RunArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let algorithm: Algorithm = args.algorithm.parse()?;
    let instance = Instance::load(&args.instance)?;
    let (f, m) = instance.build()?;
    let options = SolveOptions {
        x: args.x,
        p: args.p.value(),
        seed: args.seed,
        rp_base: None,
    };
    let report = solve(&f, &m, algorithm, &options)?;
    let mut out = RunOutput {
        label: instance.label.clone(),
        n: instance.n,
        k: m.rank(),
        report,
        opt: None,
        opt_witness: None,
        ratio: None,
    };
    if args.opt {
        let best = brute_force_opt(&f.with_fresh_counter(), &m.with_fresh_counter())?;
        out.ratio = Some(ratio(out.report.value, best.value));
        out.opt = Some(best.value);
        out.opt_witness = Some(best.witness);
    }
    let json = serde_json::to_string_pretty(&out).expect("reports serialize");
    writeln!(stdout, "{json}")?;
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{json}\n"))?;
    }
    Ok(EXIT_OK)
}
