use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FunctionSpec, Instance, MatroidSpec};
use crate::error::{Error, Result};

/// Deterministic catalog of small instances, every one of rank at least 2.
///
/// For each ground-set size `2..=max_n` this crosses a fixed list of matroids (uniform,
/// block and strided partitions, connected and two-component graphic) of rank `2..=max_k`
/// with a fixed list of objectives (two modular, two coverage, one weighted coverage and one
/// concave-of-modular) whose weights are small integers.
pub fn enumerate_small_instances(max_n: usize, max_k: usize) -> impl Iterator<Item = Instance> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let functions = function_catalog(n);
        for (mlabel, matroid) in matroid_catalog(n, max_k) {
            for (flabel, function) in &functions {
                out.push(Instance {
                    n,
                    label: format!("n{n}-{mlabel}-{flabel}"),
                    matroid: matroid.clone(),
                    function: function.clone(),
                });
            }
        }
    }
    out.into_iter()
}

fn matroid_catalog(n: usize, max_k: usize) -> Vec<(String, MatroidSpec)> {
    let mut out = Vec::new();
    for k in 2..=max_k.min(n) {
        out.push((format!("uniform{k}"), MatroidSpec::Uniform { k }));
    }
    // contiguous blocks, capacity one each
    for m in 2..=max_k.min(n) {
        let parts: Vec<Vec<usize>> = (0..m)
            .map(|p| (p * n / m..(p + 1) * n / m).collect())
            .collect();
        out.push((
            format!("blocks{m}"),
            MatroidSpec::Partition {
                parts,
                capacities: vec![1; m],
            },
        ));
    }
    // even/odd ids with capacities (2, 1)
    if n >= 4 && max_k >= 3 {
        out.push((
            "parity".to_string(),
            MatroidSpec::Partition {
                parts: vec![(0..n).step_by(2).collect(), (1..n).step_by(2).collect()],
                capacities: vec![2, 1],
            },
        ));
    }
    // connected multigraph on v vertices: a path first, then the remaining pairs, repeating
    for v in 3..=(max_k + 1) {
        if n < v - 1 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = (1..v).map(|b| (b - 1, b)).collect();
        for a in 0..v {
            for b in a + 2..v {
                pairs.push((a, b));
            }
        }
        let edges = (0..n).map(|i| pairs[i % pairs.len()]).collect();
        out.push((
            format!("graph{v}"),
            MatroidSpec::Graphic {
                num_vertices: v,
                edges,
            },
        ));
    }
    // two components: a triangle and a pendant edge pair on separate vertices
    if n >= 3 && max_k >= 3 {
        let pairs = [(0, 1), (3, 4), (1, 2), (0, 2), (3, 4)];
        let edges = (0..n).map(|i| pairs[i % pairs.len()]).collect();
        out.push((
            "forest".to_string(),
            MatroidSpec::Graphic {
                num_vertices: 5,
                edges,
            },
        ));
    }
    out
}

fn function_catalog(n: usize) -> Vec<(&'static str, FunctionSpec)> {
    let weights = |g: &dyn Fn(usize) -> usize| (0..n).map(|i| g(i) as f64).collect::<Vec<_>>();
    let universe = n.div_ceil(2) + 2;
    vec![
        (
            "mod-cyc",
            FunctionSpec::Modular {
                weights: weights(&|i| 1 + (7 * i + 3) % 5),
            },
        ),
        (
            "mod-zero",
            FunctionSpec::Modular {
                weights: weights(&|i| (3 * i + 2) % 4),
            },
        ),
        (
            "cov-ring",
            FunctionSpec::Coverage {
                universe_weights: None,
                covers: (0..n)
                    .map(|i| {
                        let mut c = vec![i % universe, (i + 1) % universe];
                        if i % 3 == 0 {
                            c.push((i + 3) % universe);
                        }
                        c.sort();
                        c.dedup();
                        c
                    })
                    .collect(),
            },
        ),
        (
            "cov-nest",
            FunctionSpec::Coverage {
                universe_weights: None,
                // element i covers a prefix whose length cycles, giving heavy overlap
                covers: (0..n).map(|i| (0..1 + (i * 5 + 1) % 4).collect()).collect(),
            },
        ),
        (
            "wcov",
            FunctionSpec::WeightedCoverage {
                universe_weights: (0..universe)
                    .map(|j| (1 + (5 * j + 2) % 4) as f64)
                    .collect(),
                covers: (0..n)
                    .map(|i| {
                        let mut c = vec![(3 * i) % universe, (3 * i + 1) % universe];
                        c.sort();
                        c.dedup();
                        c
                    })
                    .collect(),
            },
        ),
        (
            "sqrt",
            FunctionSpec::ConcaveOfModular {
                weights: weights(&|i| 1 + (3 * i + 1) % 4),
                exponent: 0.5,
            },
        ),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidKind {
    Uniform,
    Partition,
    Graphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Modular,
    Coverage,
    WeightedCoverage,
    ConcaveOfModular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomInstanceConfig {
    pub n: usize,
    /// Target rank; defaults to `min(n, 4)`.
    pub k: Option<usize>,
    pub matroid: MatroidKind,
    pub function: FunctionKind,
}

impl RandomInstanceConfig {
    pub fn new(n: usize, matroid: MatroidKind, function: FunctionKind) -> Self {
        RandomInstanceConfig {
            n,
            k: None,
            matroid,
            function,
        }
    }

    pub fn with_rank(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

/// Reproducible random instance of rank exactly `k`.
///
/// * uniform: `U(n, k)`;
/// * partition: `k` non-empty parts of capacity one, elements assigned uniformly at random;
/// * graphic: `k + 1` vertices, a random recursive spanning tree on `k` random element ids and
///   uniformly random non-loop edges for the rest;
/// * weights are uniform integers in `[1, 10]`; every coverage element covers 1 to 3 distinct
///   random items of a universe of size `n` (unit item weights for `coverage`, random weights
///   for `weighted_coverage`); concave-of-modular uses exponent 0.5.
pub fn random_instance(seed: u64, config: &RandomInstanceConfig) -> Result<Instance> {
    let n = config.n;
    if n < 2 {
        return Err(Error::invalid(format!(
            "random instances need n >= 2, got {n}"
        )));
    }
    let k = config.k.unwrap_or(n.min(4));
    if k == 0 || k > n {
        return Err(Error::invalid(format!("rank {k} infeasible for n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let matroid = match config.matroid {
        MatroidKind::Uniform => MatroidSpec::Uniform { k },
        MatroidKind::Partition => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut parts = vec![Vec::new(); k];
            for (pos, &u) in order.iter().enumerate() {
                let p = if pos < k { pos } else { rng.gen_range(0..k) };
                parts[p].push(u);
            }
            for part in &mut parts {
                part.sort_unstable();
            }
            MatroidSpec::Partition {
                parts,
                capacities: vec![1; k],
            }
        }
        MatroidKind::Graphic => {
            let v = k + 1;
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut rng);
            let mut edges = vec![(0, 0); n];
            for (b, &id) in (1..v).zip(&ids) {
                edges[id] = (rng.gen_range(0..b), b);
            }
            for &id in &ids[k..] {
                let a = rng.gen_range(0..v);
                let mut b = rng.gen_range(0..v - 1);
                if b >= a {
                    b += 1;
                }
                edges[id] = (a.min(b), a.max(b));
            }
            MatroidSpec::Graphic {
                num_vertices: v,
                edges,
            }
        }
    };

    let mut int_weights =
        |len: usize| -> Vec<f64> { (0..len).map(|_| rng.gen_range(1..=10) as f64).collect() };
    let function = match config.function {
        FunctionKind::Modular => FunctionSpec::Modular {
            weights: int_weights(n),
        },
        FunctionKind::ConcaveOfModular => FunctionSpec::ConcaveOfModular {
            weights: int_weights(n),
            exponent: super::DEFAULT_EXPONENT,
        },
        FunctionKind::Coverage | FunctionKind::WeightedCoverage => {
            let universe_weights = match config.function {
                FunctionKind::WeightedCoverage => int_weights(n),
                _ => vec![1.0; n],
            };
            let items: Vec<usize> = (0..n).collect();
            let covers = (0..n)
                .map(|_| {
                    let size = rng.gen_range(1..=3.min(n));
                    let mut c: Vec<usize> =
                        items.choose_multiple(&mut rng, size).copied().collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            match config.function {
                FunctionKind::WeightedCoverage => FunctionSpec::WeightedCoverage {
                    universe_weights,
                    covers,
                },
                _ => FunctionSpec::Coverage {
                    universe_weights: Some(universe_weights),
                    covers,
                },
            }
        }
    };

    let inst = Instance {
        n,
        label: format!(
            "rand-{}-{}-n{n}-k{k}-s{seed}",
            matroid.kind(),
            function_kind_label(config.function)
        ),
        matroid,
        function,
    };
    inst.validate()?;
    Ok(inst)
}

fn function_kind_label(kind: FunctionKind) -> &'static str {
    match kind {
        FunctionKind::Modular => "modular",
        FunctionKind::Coverage => "coverage",
        FunctionKind::WeightedCoverage => "weighted_coverage",
        FunctionKind::ConcaveOfModular => "concave_of_modular",
    }
}
