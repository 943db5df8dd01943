use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ObjectiveSpec, Sense};

/// Lower and upper edge weight of regenerated weighted K5 instances.
pub const WEIGHT_RANGE: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    /// Panics on self-loops, duplicate edges, out-of-range vertices or
    /// non-finite weights.
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        let mut seen = BTreeSet::new();
        for &(i, j, w) in &edges {
            assert!(i != j, "self-loop on vertex {i}");
            assert!(
                i < n_vertices && j < n_vertices,
                "edge ({i}, {j}) out of range"
            );
            assert!(w.is_finite(), "non-finite weight on ({i}, {j})");
            assert!(
                seen.insert((i.min(j), i.max(j))),
                "duplicate edge ({i}, {j})"
            );
        }
        Self { n_vertices, edges }
    }
}

/// Complete graph with unit weights.
pub fn complete_graph(n_vertices: usize) -> WeightedGraph {
    let edges = (0..n_vertices)
        .flat_map(|i| (i + 1..n_vertices).map(move |j| (i, j, 1.0)))
        .collect();
    WeightedGraph::new(n_vertices, edges)
}

/// Complete 5-vertex graph with weights uniform in [`WEIGHT_RANGE`].
pub fn random_weighted_k5(seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = WEIGHT_RANGE;
    let edges = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, rng.random_range(lo..=hi)))
        .collect();
    WeightedGraph::new(5, edges)
}

/// Cut value `Σ W_ij (q_i + q_j - 2 q_i q_j)`, maximized. Unweighted cuts use
/// `W_ij = 1` regardless of stored weights.
pub fn maxcut(graph: &WeightedGraph, weighted: bool) -> ObjectiveSpec {
    let edges: Vec<(usize, usize, f64)> = graph
        .edges
        .iter()
        .map(|&(i, j, w)| (i, j, if weighted { w } else { 1.0 }))
        .collect();
    let name = if weighted {
        "weighted-maxcut"
    } else {
        "maxcut"
    };
    ObjectiveSpec::new(
        name,
        graph.n_vertices,
        vec![],
        Sense::Maximize,
        move |q, _| {
            edges
                .iter()
                .map(|&(i, j, w)| {
                    let (qi, qj) = (f64::from(q[i]), f64::from(q[j]));
                    w * (qi + qj - 2.0 * qi * qj)
                })
                .sum()
        },
    )
}
