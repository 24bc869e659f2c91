//! Shared benchmark inputs.

use catec_core::flow::FlowNetwork;
use catec_core::synthetic::{gen_chromatic_graph, gen_chromatic_hypergraph, ChromaticParams};
use catec_core::LabeledHypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Planted chromatic graph with `n` nodes and `k` clusters and colors.
pub fn planted_graph(n: usize, k: usize, seed: u64) -> LabeledHypergraph {
    let params = ChromaticParams::graph(n, k, k, 0.1, 0.01, 0.2);
    gen_chromatic_graph(&params, &mut ChaCha8Rng::seed_from_u64(seed))
        .expect("valid parameters")
        .0
}

/// Planted 3-uniform hypergraph with `k` clusters, one color each.
pub fn planted_hypergraph(n: usize, k: usize, seed: u64) -> LabeledHypergraph {
    let params = ChromaticParams {
        r: 3,
        ..ChromaticParams::graph(n, k, k, 0.01, 0.0002, 0.2)
    };
    gen_chromatic_hypergraph(&params, &mut ChaCha8Rng::seed_from_u64(seed))
        .expect("valid parameters")
        .0
}

/// Random network with integer capacities, source 0 and sink `n - 1`.
pub fn random_network(n: usize, arcs: usize, seed: u64) -> FlowNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = FlowNetwork::new(n, 0, n - 1);
    for _ in 0..arcs {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            net.add_arc(a, b, rng.random_range(1..=100) as f64);
        }
    }
    net
}
