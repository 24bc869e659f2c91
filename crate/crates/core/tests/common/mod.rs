//! Instance generators and exhaustive oracles shared by the integration tests.
//!
//! The oracles recompute objectives from the raw edge lists instead of
//! calling into the library, so they check the library rather than echo it.

#![allow(dead_code)]

use catec_core::{HyperEdge, LabeledHypergraph};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of a random instance.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_nodes: usize,
    pub max_categories: u32,
    pub max_edge_size: usize,
    pub max_edges: usize,
    /// Weights drawn from `1..=max_weight`.
    pub max_weight: u32,
    pub wildcards: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_nodes: 10,
            max_categories: 4,
            max_edge_size: 4,
            max_edges: 12,
            max_weight: 3,
            wildcards: false,
        }
    }
}

pub fn random_instance<R: Rng>(rng: &mut R, shape: Shape, categories: Option<u32>) -> LabeledHypergraph {
    let n = rng.random_range(2..=shape.max_nodes);
    let k = categories.unwrap_or_else(|| rng.random_range(2..=shape.max_categories));
    let m = rng.random_range(1..=shape.max_edges);
    let edges = (0..m)
        .map(|_| {
            let size = rng.random_range(2..=shape.max_edge_size.min(n));
            let nodes = sample(rng, n, size).into_vec();
            let low = if shape.wildcards { 0 } else { 1 };
            let label = rng.random_range(low..=k);
            let weight = rng.random_range(1..=shape.max_weight) as f64;
            HyperEdge::new(nodes, label, weight)
        })
        .collect();
    LabeledHypergraph::new(n, k, edges).unwrap()
}

pub fn seeded_instance(seed: u64, shape: Shape, categories: Option<u32>) -> LabeledHypergraph {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), shape, categories)
}

/// Proptest strategy over random instances of the given shape.
pub fn instances(shape: Shape, categories: Option<u32>) -> impl Strategy<Value = LabeledHypergraph> {
    any::<u64>().prop_map(move |seed| seeded_instance(seed, shape, categories))
}

/// Categorical objective recomputed from the edge list.
pub fn mistakes(h: &LabeledHypergraph, labels: &[u32]) -> f64 {
    let mut total = 0.0;
    for e in h.edges() {
        let nodes = e.nodes();
        let wanted = if e.label() == 0 { labels[nodes[0]] } else { e.label() };
        if nodes.iter().any(|&v| labels[v] != wanted) {
            total += e.weight();
        }
    }
    total
}

/// Linear objective recomputed from the edge list.
pub fn node_mistakes(h: &LabeledHypergraph, labels: &[u32]) -> f64 {
    h.edges()
        .iter()
        .filter(|e| e.label() != 0)
        .map(|e| e.weight() * e.nodes().iter().filter(|&&v| labels[v] != e.label()).count() as f64)
        .sum()
}

/// Calls `visit` on every labeling in `{1..=k}^n`.
pub fn for_each_labeling(n: usize, k: u32, mut visit: impl FnMut(&[u32])) {
    let mut labels = vec![1; n];
    loop {
        visit(&labels);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if labels[i] < k {
                labels[i] += 1;
                break;
            }
            labels[i] = 1;
            i += 1;
        }
    }
}

/// Minimum of `f` over all labelings.
pub fn exhaustive_min(h: &LabeledHypergraph, f: impl Fn(&LabeledHypergraph, &[u32]) -> f64) -> f64 {
    let mut best = f64::INFINITY;
    for_each_labeling(h.node_count(), h.category_count(), |y| {
        best = best.min(f(h, y));
    });
    best
}

pub fn exhaustive_optimum(h: &LabeledHypergraph) -> f64 {
    exhaustive_min(h, mistakes)
}

/// Largest edge size of `h`.
pub fn rank(h: &LabeledHypergraph) -> usize {
    h.edges().iter().map(|e| e.nodes().len()).max().unwrap_or(0)
}
