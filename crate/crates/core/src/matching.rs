//! Maximum-weight perfect matching in square bipartite graphs.
//!
//! The solver is the O(k³) Hungarian method with potentials. Rows of the cost matrix are the
//! right vertices, columns the left vertices; absent edges carry a prohibitive cost, and an
//! optimum that still uses one means no perfect matching exists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeData {
    pub weight: f64,
    pub payload: ElementId,
}

/// Bipartite graph with at most one edge per `(left, right)` pair.
///
/// Parallel edges are collapsed on insertion: the heavier one wins and equal weights keep the
/// smaller payload id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedBipartiteGraph {
    left_size: usize,
    right_size: usize,
    edges: BTreeMap<(usize, usize), EdgeData>,
}

impl WeightedBipartiteGraph {
    pub fn new(left_size: usize, right_size: usize) -> Self {
        WeightedBipartiteGraph {
            left_size,
            right_size,
            edges: BTreeMap::new(),
        }
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, left: usize, right: usize) -> Option<EdgeData> {
        self.edges.get(&(left, right)).copied()
    }

    /// Edges as `(left, right, data)` in ascending `(left, right)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeData)> + '_ {
        self.edges.iter().map(|(&(l, r), &d)| (l, r, d))
    }

    pub fn add_edge(
        &mut self,
        left: usize,
        right: usize,
        weight: f64,
        payload: ElementId,
    ) -> Result<()> {
        if left >= self.left_size || right >= self.right_size {
            return Err(Error::invalid(format!(
                "edge ({left}, {right}) outside a {}x{} graph",
                self.left_size, self.right_size
            )));
        }
        if !weight.is_finite() {
            return Err(Error::invalid(format!(
                "edge weight {weight} must be finite"
            )));
        }
        let new = EdgeData { weight, payload };
        self.edges
            .entry((left, right))
            .and_modify(|old| {
                if weight > old.weight || (weight == old.weight && payload < old.payload) {
                    *old = new;
                }
            })
            .or_insert(new);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedEdge {
    pub left: usize,
    pub payload: ElementId,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    /// `pairs[right]` is the edge matched to right vertex `right`.
    pub pairs: Vec<MatchedEdge>,
    pub total_weight: f64,
}

/// Maximum-weight perfect matching, or [`Error::Infeasible`] if the graph has none.
pub fn max_weight_perfect_matching(g: &WeightedBipartiteGraph) -> Result<Matching> {
    let k = g.right_size;
    if g.left_size != k {
        return Err(Error::invalid(format!(
            "perfect matching needs a square graph, got {}x{}",
            g.left_size, g.right_size
        )));
    }
    if k == 0 {
        return Ok(Matching {
            pairs: Vec::new(),
            total_weight: 0.0,
        });
    }

    // Any perfect matching of real edges costs less than one using a forbidden entry.
    let max_abs = g.edges.values().map(|e| e.weight.abs()).fold(0.0, f64::max);
    let forbidden = 2.0 * k as f64 * (max_abs + 1.0) + 1.0;
    // cost[r][l], 0-based; minimizing cost maximizes weight
    let mut cost = vec![vec![forbidden; k]; k];
    for (&(l, r), e) in &g.edges {
        cost[r][l] = -e.weight;
    }

    // 1-based arrays; column 0 is the virtual start of every augmenting search.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    for r in 0..k {
        u[r + 1] = cost[r].iter().copied().fold(inf, f64::min);
    }
    let mut owner = vec![0usize; k + 1]; // owner[col] = row matched to col
    let mut way = vec![0usize; k + 1];
    for row in 1..=k {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![inf; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[col0] = true;
            let row0 = owner[col0];
            let mut delta = inf;
            let mut col1 = 0;
            for col in 1..=k {
                if used[col] {
                    continue;
                }
                let reduced = cost[row0 - 1][col - 1] - u[row0] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=k {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            owner[col0] = owner[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut pairs = vec![None; k];
    for (l, &row) in owner.iter().skip(1).enumerate() {
        let r = row - 1;
        let e = g.edge(l, r).ok_or_else(|| {
            Error::Infeasible(format!(
                "{k}x{k} graph with {} edges has no perfect matching",
                g.num_edges()
            ))
        })?;
        pairs[r] = Some(MatchedEdge {
            left: l,
            payload: e.payload,
            weight: e.weight,
        });
    }
    let pairs: Vec<MatchedEdge> = pairs
        .into_iter()
        .map(|p| p.expect("assignment is a bijection"))
        .collect();
    let total_weight = pairs.iter().map(|p| p.weight).sum();
    Ok(Matching {
        pairs,
        total_weight,
    })
}
