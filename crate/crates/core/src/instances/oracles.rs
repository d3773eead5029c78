//! Concrete oracle families backing the instance file format.

use petgraph::unionfind::UnionFind;

use crate::oracle::{IndependenceOracle, ValueOracle};
use crate::set::ElementSet;

#[derive(Clone, Debug)]
pub struct ModularFunction {
    pub weights: Vec<f64>,
}

impl ValueOracle for ModularFunction {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &ElementSet) -> f64 {
        set.iter().map(|u| self.weights[u.index()]).sum()
    }
}

/// Weighted coverage: `f(S)` is the total weight of universe items covered by some member of `S`.
#[derive(Clone, Debug)]
pub struct CoverageFunction {
    pub universe_weights: Vec<f64>,
    pub covers: Vec<Vec<usize>>,
}

impl ValueOracle for CoverageFunction {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn value(&self, set: &ElementSet) -> f64 {
        let mut covered = vec![false; self.universe_weights.len()];
        let mut total = 0.0;
        for u in set {
            for &item in &self.covers[u.index()] {
                if !covered[item] {
                    covered[item] = true;
                    total += self.universe_weights[item];
                }
            }
        }
        total
    }
}

/// `f(S) = (Σ_{u ∈ S} w_u)^γ` with `γ ∈ (0, 1]`.
#[derive(Clone, Debug)]
pub struct ConcaveOfModular {
    pub weights: Vec<f64>,
    pub exponent: f64,
}

impl ValueOracle for ConcaveOfModular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &ElementSet) -> f64 {
        let total: f64 = set.iter().map(|u| self.weights[u.index()]).sum();
        total.powf(self.exponent)
    }
}

#[derive(Clone, Debug)]
pub struct UniformMatroid {
    pub n: usize,
    pub k: usize,
}

impl IndependenceOracle for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        set.len() <= self.k
    }

    fn rank(&self) -> usize {
        self.k.min(self.n)
    }
}

#[derive(Clone, Debug)]
pub struct PartitionMatroid {
    /// Part index of every element.
    pub part_of: Vec<usize>,
    pub capacities: Vec<usize>,
}

impl IndependenceOracle for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.part_of.len()
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let mut used = vec![0usize; self.capacities.len()];
        for u in set {
            let part = self.part_of[u.index()];
            used[part] += 1;
            if used[part] > self.capacities[part] {
                return false;
            }
        }
        true
    }

    fn rank(&self) -> usize {
        let mut sizes = vec![0usize; self.capacities.len()];
        for &part in &self.part_of {
            sizes[part] += 1;
        }
        sizes
            .iter()
            .zip(&self.capacities)
            .map(|(&s, &c)| s.min(c))
            .sum()
    }
}

/// Cycle matroid of a multigraph: element `i` is edge `edges[i]`; a set is independent iff its
/// edges form a forest. Union-find is rebuilt per query.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphicMatroid {
    fn components(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.num_vertices);
        let mut comps = self.num_vertices;
        for &(a, b) in &self.edges {
            if uf.union(a, b) {
                comps -= 1;
            }
        }
        comps
    }
}

impl IndependenceOracle for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let mut uf = UnionFind::<usize>::new(self.num_vertices);
        set.iter().all(|u| {
            let (a, b) = self.edges[u.index()];
            uf.union(a, b)
        })
    }

    fn rank(&self) -> usize {
        self.num_vertices - self.components()
    }
}
