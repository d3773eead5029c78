//! Problem instances: a ground set, a matroid and a monotone submodular objective.
//!
//! Instances are stored as JSON documents with the top-level keys `n`, `label`, `matroid`
//! and `function`:
//!
//! ```json
//! {"n":3,"label":"tri",
//!  "matroid":{"kind":"graphic","num_vertices":3,"edges":[[0,1],[1,2],[0,2]]},
//!  "function":{"kind":"coverage","universe_weights":[1,1,1],"covers":[[0,1],[1,2],[2]]}}
//! ```

mod generate;
pub mod oracles;

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle::{IndependenceOracle, Matroid, SetFunction, ValueOracle};

pub use generate::{
    enumerate_small_instances, random_instance, FunctionKind, MatroidKind, RandomInstanceConfig,
};
use oracles::{
    ConcaveOfModular, CoverageFunction, GraphicMatroid, ModularFunction, PartitionMatroid,
    UniformMatroid,
};

pub const DEFAULT_EXPONENT: f64 = 0.5;

fn default_exponent() -> f64 {
    DEFAULT_EXPONENT
}

/// Writes integral weights as JSON integers so files stay exact and readable.
fn serialize_weights<S: Serializer>(weights: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(weights.len()))?;
    for &w in weights {
        if w.fract() == 0.0 && w.abs() < 9.0e15 {
            seq.serialize_element(&(w as i64))?;
        } else {
            seq.serialize_element(&w)?;
        }
    }
    seq.end()
}

fn serialize_opt_weights<S: Serializer>(
    weights: &Option<Vec<f64>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match weights {
        Some(w) => serialize_weights(w, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform {
        k: usize,
    },
    Partition {
        parts: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Graphic {
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Modular {
        #[serde(serialize_with = "serialize_weights")]
        weights: Vec<f64>,
    },
    /// Coverage; universe weights default to 1 when omitted.
    Coverage {
        #[serde(
            default,
            skip_serializing_if = "Option::is_none",
            serialize_with = "serialize_opt_weights"
        )]
        universe_weights: Option<Vec<f64>>,
        covers: Vec<Vec<usize>>,
    },
    WeightedCoverage {
        #[serde(serialize_with = "serialize_weights")]
        universe_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    ConcaveOfModular {
        #[serde(serialize_with = "serialize_weights")]
        weights: Vec<f64>,
        #[serde(default = "default_exponent")]
        exponent: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    #[serde(default)]
    pub label: String,
    pub matroid: MatroidSpec,
    pub function: FunctionSpec,
}

fn check_weights(field: &str, weights: &[f64]) -> Result<()> {
    match weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
        Some(i) => Err(Error::construction(
            format!("{field}[{i}]"),
            "weights must be finite and non-negative",
        )),
        None => Ok(()),
    }
}

fn check_len(field: &str, len: usize, n: usize) -> Result<()> {
    if len != n {
        return Err(Error::construction(
            field,
            format!("expected {n} entries, found {len}"),
        ));
    }
    Ok(())
}

impl MatroidSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MatroidSpec::Uniform { .. } => "uniform",
            MatroidSpec::Partition { .. } => "partition",
            MatroidSpec::Graphic { .. } => "graphic",
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            MatroidSpec::Uniform { k } => {
                if *k == 0 || *k > n {
                    return Err(Error::construction(
                        "matroid.k",
                        format!("rank must be in 1..={n}, got {k}"),
                    ));
                }
            }
            MatroidSpec::Partition { parts, capacities } => {
                if parts.len() != capacities.len() {
                    return Err(Error::construction(
                        "matroid.capacities",
                        format!("{} capacities for {} parts", capacities.len(), parts.len()),
                    ));
                }
                let mut seen = vec![false; n];
                for (p, part) in parts.iter().enumerate() {
                    for &u in part {
                        if u >= n {
                            return Err(Error::construction(
                                format!("matroid.parts[{p}]"),
                                format!("element {u} out of range for n = {n}"),
                            ));
                        }
                        if std::mem::replace(&mut seen[u], true) {
                            return Err(Error::construction(
                                format!("matroid.parts[{p}]"),
                                format!("element {u} appears in more than one part"),
                            ));
                        }
                    }
                    if capacities[p] > part.len() {
                        return Err(Error::construction(
                            format!("matroid.capacities[{p}]"),
                            format!(
                                "capacity {} exceeds part size {}",
                                capacities[p],
                                part.len()
                            ),
                        ));
                    }
                }
                if let Some(u) = seen.iter().position(|s| !s) {
                    return Err(Error::construction(
                        "matroid.parts",
                        format!("element {u} is not in any part"),
                    ));
                }
                if capacities.iter().sum::<usize>() == 0 {
                    return Err(Error::construction(
                        "matroid.capacities",
                        "rank must be at least 1",
                    ));
                }
            }
            MatroidSpec::Graphic {
                num_vertices,
                edges,
            } => {
                check_len("matroid.edges", edges.len(), n)?;
                if let Some(i) = edges
                    .iter()
                    .position(|&(a, b)| a >= *num_vertices || b >= *num_vertices)
                {
                    return Err(Error::construction(
                        format!("matroid.edges[{i}]"),
                        format!("endpoint out of range for {num_vertices} vertices"),
                    ));
                }
                if self.oracle(n).rank() == 0 {
                    return Err(Error::construction(
                        "matroid.edges",
                        "rank must be at least 1",
                    ));
                }
            }
        }
        Ok(())
    }

    fn oracle(&self, n: usize) -> Arc<dyn IndependenceOracle> {
        match self {
            MatroidSpec::Uniform { k } => Arc::new(UniformMatroid { n, k: *k }),
            MatroidSpec::Partition { parts, capacities } => {
                let mut part_of = vec![0; n];
                for (p, part) in parts.iter().enumerate() {
                    for &u in part {
                        part_of[u] = p;
                    }
                }
                Arc::new(PartitionMatroid {
                    part_of,
                    capacities: capacities.clone(),
                })
            }
            MatroidSpec::Graphic {
                num_vertices,
                edges,
            } => Arc::new(GraphicMatroid {
                num_vertices: *num_vertices,
                edges: edges.clone(),
            }),
        }
    }
}

impl FunctionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::Modular { .. } => "modular",
            FunctionSpec::Coverage { .. } => "coverage",
            FunctionSpec::WeightedCoverage { .. } => "weighted_coverage",
            FunctionSpec::ConcaveOfModular { .. } => "concave_of_modular",
        }
    }

    /// True when every value the function can take is an integer (so comparisons are exact).
    pub fn is_integral(&self) -> bool {
        let integral = |w: &[f64]| w.iter().all(|x| x.fract() == 0.0);
        match self {
            FunctionSpec::Modular { weights } => integral(weights),
            FunctionSpec::Coverage {
                universe_weights, ..
            } => universe_weights.as_deref().is_none_or(integral),
            FunctionSpec::WeightedCoverage {
                universe_weights, ..
            } => integral(universe_weights),
            FunctionSpec::ConcaveOfModular { exponent, weights } => {
                *exponent == 1.0 && integral(weights)
            }
        }
    }

    fn universe_size(universe_weights: Option<&Vec<f64>>, covers: &[Vec<usize>]) -> usize {
        match universe_weights {
            Some(w) => w.len(),
            None => covers.iter().flatten().map(|&i| i + 1).max().unwrap_or(0),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            FunctionSpec::Modular { weights } => {
                check_len("function.weights", weights.len(), n)?;
                check_weights("function.weights", weights)
            }
            FunctionSpec::Coverage {
                universe_weights,
                covers,
            } => {
                if let Some(w) = universe_weights {
                    check_weights("function.universe_weights", w)?;
                }
                Self::validate_covers(
                    Self::universe_size(universe_weights.as_ref(), covers),
                    covers,
                    n,
                )
            }
            FunctionSpec::WeightedCoverage {
                universe_weights,
                covers,
            } => {
                check_weights("function.universe_weights", universe_weights)?;
                Self::validate_covers(universe_weights.len(), covers, n)
            }
            FunctionSpec::ConcaveOfModular { weights, exponent } => {
                check_len("function.weights", weights.len(), n)?;
                check_weights("function.weights", weights)?;
                if !(*exponent > 0.0 && *exponent <= 1.0) {
                    return Err(Error::construction(
                        "function.exponent",
                        format!("must lie in (0, 1], got {exponent}"),
                    ));
                }
                Ok(())
            }
        }
    }

    fn validate_covers(universe: usize, covers: &[Vec<usize>], n: usize) -> Result<()> {
        check_len("function.covers", covers.len(), n)?;
        for (u, cover) in covers.iter().enumerate() {
            if let Some(&item) = cover.iter().find(|&&item| item >= universe) {
                return Err(Error::construction(
                    format!("function.covers[{u}]"),
                    format!("universe item {item} out of range (universe size {universe})"),
                ));
            }
        }
        Ok(())
    }

    fn oracle(&self) -> Arc<dyn ValueOracle> {
        match self {
            FunctionSpec::Modular { weights } => Arc::new(ModularFunction {
                weights: weights.clone(),
            }),
            FunctionSpec::Coverage {
                universe_weights,
                covers,
            } => {
                let size = Self::universe_size(universe_weights.as_ref(), covers);
                Arc::new(CoverageFunction {
                    universe_weights: universe_weights.clone().unwrap_or_else(|| vec![1.0; size]),
                    covers: covers.clone(),
                })
            }
            FunctionSpec::WeightedCoverage {
                universe_weights,
                covers,
            } => Arc::new(CoverageFunction {
                universe_weights: universe_weights.clone(),
                covers: covers.clone(),
            }),
            FunctionSpec::ConcaveOfModular { weights, exponent } => Arc::new(ConcaveOfModular {
                weights: weights.clone(),
                exponent: *exponent,
            }),
        }
    }
}

impl Instance {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::construction("n", "ground set must be non-empty"));
        }
        self.matroid.validate(self.n)?;
        self.function.validate(self.n)
    }

    /// Shareable oracles; each run should wrap them in its own counted handles.
    pub fn oracles(&self) -> Result<(Arc<dyn ValueOracle>, Arc<dyn IndependenceOracle>)> {
        self.validate()?;
        Ok((self.function.oracle(), self.matroid.oracle(self.n)))
    }

    /// Counted oracles with fresh counters.
    pub fn build(&self) -> Result<(SetFunction, Matroid)> {
        let (f, m) = self.oracles()?;
        Ok((SetFunction::new(f), Matroid::new(m)?))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.oracles()?.1.rank())
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let inst: Instance =
            serde_json::from_str(text).map_err(|source| Error::Parse { path: None, source })?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let inst: Instance = serde_json::from_str(&text).map_err(|source| Error::Parse {
            path: Some(path.display().to_string()),
            source,
        })?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet;

    const TRIANGLE: &str = r#"{"n":3,"label":"tri","matroid":{"kind":"graphic","num_vertices":3,"edges":[[0,1],[1,2],[0,2]]},"function":{"kind":"coverage","universe_weights":[1,1,1],"covers":[[0,1],[1,2],[2]]}}"#;

    #[test]
    fn parses_documented_example() {
        let inst = Instance::from_json(TRIANGLE).unwrap();
        assert_eq!(inst.n, 3);
        assert_eq!(inst.label, "tri");
        let (f, m) = inst.build().unwrap();
        assert_eq!(m.rank(), 2);
        assert!(!m.is_independent(&ElementSet::from([0, 1, 2])));
        assert_eq!(f.evaluate(&ElementSet::from([0, 1])), 3.0);
    }

    #[test]
    fn build_uniform_modular() {
        let inst = Instance {
            n: 2,
            label: String::new(),
            matroid: MatroidSpec::Uniform { k: 2 },
            function: FunctionSpec::Modular {
                weights: vec![2.0, 1.0],
            },
        };
        let (f, m) = inst.build().unwrap();
        assert_eq!(f.evaluate(&ElementSet::from([0, 1])), 3.0);
        assert!(m.is_independent(&ElementSet::from([0, 1])));
    }

    #[test]
    fn build_coverage_example() {
        let inst = Instance {
            n: 3,
            label: String::new(),
            matroid: MatroidSpec::Uniform { k: 2 },
            function: FunctionSpec::Coverage {
                universe_weights: None,
                covers: vec![vec![1, 2], vec![2, 3], vec![3]],
            },
        };
        let (f, _) = inst.build().unwrap();
        assert_eq!(f.evaluate(&ElementSet::from([0, 1])), 3.0);
    }

    #[test]
    fn empty_covers_is_zero_function() {
        let text = r#"{"n":3,"matroid":{"kind":"uniform","k":2},"function":{"kind":"coverage","covers":[[],[],[]]}}"#;
        let (f, _) = Instance::from_json(text).unwrap().build().unwrap();
        for mask in 0..8 {
            assert_eq!(f.evaluate(&ElementSet::from_mask(mask)), 0.0);
        }
    }

    #[test]
    fn capacities_length_mismatch() {
        let text = r#"{"n":3,"matroid":{"kind":"partition","parts":[[0,1],[2]],"capacities":[1]},"function":{"kind":"modular","weights":[1,1,1]}}"#;
        match Instance::from_json(text) {
            Err(Error::Construction { field, .. }) => assert_eq!(field, "matroid.capacities"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_kind_is_parse_error() {
        let text = r#"{"n":3,"matroid":{"kind":"linear","k":2},"function":{"kind":"modular","weights":[1,1,1]}}"#;
        let err = Instance::from_json(text).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("linear"));
    }

    #[test]
    fn parse_error_reports_line() {
        let text = "{\n\"n\": 3,\n\"matroid\": oops\n}";
        let err = Instance::from_json(text).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn partition_validation() {
        let bad_overlap = r#"{"n":2,"matroid":{"kind":"partition","parts":[[0,1],[1]],"capacities":[1,1]},"function":{"kind":"modular","weights":[1,1]}}"#;
        assert!(Instance::from_json(bad_overlap).is_err());
        let bad_cover = r#"{"n":3,"matroid":{"kind":"partition","parts":[[0,1]],"capacities":[1]},"function":{"kind":"modular","weights":[1,1,1]}}"#;
        assert!(Instance::from_json(bad_cover).is_err());
        let bad_cap = r#"{"n":2,"matroid":{"kind":"partition","parts":[[0,1]],"capacities":[3]},"function":{"kind":"modular","weights":[1,1]}}"#;
        assert!(Instance::from_json(bad_cap).is_err());
    }

    #[test]
    fn rejects_negative_weight_and_bad_exponent() {
        let neg = r#"{"n":2,"matroid":{"kind":"uniform","k":1},"function":{"kind":"modular","weights":[1,-1]}}"#;
        assert!(Instance::from_json(neg).is_err());
        let exp = r#"{"n":2,"matroid":{"kind":"uniform","k":1},"function":{"kind":"concave_of_modular","weights":[1,1],"exponent":1.5}}"#;
        assert!(Instance::from_json(exp).is_err());
        let def = r#"{"n":2,"matroid":{"kind":"uniform","k":1},"function":{"kind":"concave_of_modular","weights":[1,1]}}"#;
        match Instance::from_json(def).unwrap().function {
            FunctionSpec::ConcaveOfModular { exponent, .. } => assert_eq!(exponent, 0.5),
            _ => unreachable!(),
        }
    }

    #[test]
    fn save_load_partition_round_trip() {
        let inst = Instance {
            n: 3,
            label: "part".into(),
            matroid: MatroidSpec::Partition {
                parts: vec![vec![0, 1], vec![2]],
                capacities: vec![1, 1],
            },
            function: FunctionSpec::ConcaveOfModular {
                weights: vec![1.0, 2.5, 3.0],
                exponent: 0.5,
            },
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.json");
        inst.save(&path).unwrap();
        assert_eq!(Instance::load(&path).unwrap(), inst);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("2.5") && !text.contains("3.0"), "{text}");
    }
}
