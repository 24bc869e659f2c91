mod common;

use std::io::Write as _;

use catec_core::io::{
    canonical_order, hypergraph_to_string, parse_clustering, parse_hypergraph, parse_temporal, read_hypergraph,
    write_clustering, write_temporal,
};
use catec_core::{Clustering, Error, HyperEdge, LabeledHypergraph, TemporalEdge, TemporalEdges};
use common::{instances, Shape};
use proptest::prelude::*;

fn shape() -> Shape {
    Shape {
        max_nodes: 15,
        max_categories: 12,
        max_edges: 25,
        max_weight: 1,
        wildcards: true,
        ..Shape::default()
    }
}

/// The same instance with some weights made fractional.
fn reweight(h: &LabeledHypergraph, factors: &[u8]) -> LabeledHypergraph {
    let edges = h
        .edges()
        .iter()
        .zip(factors.iter().cycle())
        .map(|(e, &f)| HyperEdge::new(e.nodes().to_vec(), e.label(), f as f64 / 8.0 + 0.125))
        .collect();
    LabeledHypergraph::new(h.node_count(), h.category_count(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn written_instances_parse_back(
        h in instances(shape(), None),
        factors in prop::collection::vec(any::<u8>(), 1..4),
        fractional in any::<bool>(),
    ) {
        let h = if fractional { reweight(&h, &factors) } else { h };
        let text = hypergraph_to_string(&h);
        let g = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(g.node_count(), h.node_count());
        prop_assert_eq!(g.category_count(), h.category_count());
        prop_assert_eq!(g.edge_count(), h.edge_count());
        for (a, b) in h.edges().iter().zip(g.edges()) {
            prop_assert_eq!(a.label(), b.label());
            prop_assert_eq!(a.weight(), b.weight());
            // edges keep their nodes sorted by index, and parsing numbers
            // nodes by first appearance, so compare as sets
            let mut names: Vec<String> = b.nodes().iter().map(|&v| g.node_name(v)).collect();
            let mut original: Vec<String> = a.nodes().iter().map(|v| v.to_string()).collect();
            names.sort();
            original.sort();
            prop_assert_eq!(names, original);
        }
        let order = canonical_order(&h);
        for (a, b) in h.edges().iter().zip(g.edges()) {
            let mut back: Vec<usize> = b.nodes().iter().map(|&v| order[v]).collect();
            back.sort_unstable();
            prop_assert_eq!(back.as_slice(), a.nodes());
        }
        let once = hypergraph_to_string(&g);
        prop_assert_eq!(hypergraph_to_string(&parse_hypergraph(&once).unwrap()), once);
        // parsing is a pure function of the text
        prop_assert_eq!(parse_hypergraph(&text).unwrap(), g);
    }

    #[test]
    fn clusterings_round_trip(h in instances(shape(), None), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let g = parse_hypergraph(&hypergraph_to_string(&h)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let y = Clustering::new(
            (0..g.node_count()).map(|_| rng.random_range(1..=g.category_count())).collect(),
        );
        let mut buf = Vec::new();
        write_clustering(&g, &y, &mut buf).unwrap();
        let z = parse_clustering(std::str::from_utf8(&buf).unwrap(), &g).unwrap();
        prop_assert_eq!(z, y);
    }

    #[test]
    fn temporal_edges_round_trip(
        raw in prop::collection::vec((-1e6f64..1e6, prop::collection::btree_set(0usize..20, 2..5)), 1..30)
    ) {
        let edges: Vec<TemporalEdge> = raw
            .iter()
            .map(|(t, nodes)| TemporalEdge { time: *t, nodes: nodes.iter().copied().collect() })
            .collect();
        let names = (0..20).map(|v| format!("n{v}")).collect();
        let t = TemporalEdges { node_names: names, edges };
        let mut buf = Vec::new();
        write_temporal(&t, &mut buf).unwrap();
        let back = parse_temporal(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.edges.len(), t.edges.len());
        for (a, b) in t.edges.iter().zip(&back.edges) {
            prop_assert_eq!(a.time, b.time);
            let mut x: Vec<&str> = a.nodes.iter().map(|&v| t.node_names[v].as_str()).collect();
            let mut y: Vec<&str> = b.nodes.iter().map(|&v| back.node_names[v].as_str()).collect();
            x.sort_unstable();
            y.sort_unstable();
            prop_assert_eq!(x, y);
        }
    }
}

#[test]
fn gzip_files_read_like_plain_ones() {
    let h = common::seeded_instance(7, shape(), None);
    let text = hypergraph_to_string(&h);
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("a.txt");
    std::fs::write(&plain, &text).unwrap();
    let packed = dir.path().join("a.gz");
    let mut enc = flate2::write::GzEncoder::new(
        std::fs::File::create(&packed).unwrap(),
        flate2::Compression::default(),
    );
    enc.write_all(text.as_bytes()).unwrap();
    enc.finish().unwrap();
    assert_eq!(read_hypergraph(&plain).unwrap(), read_hypergraph(&packed).unwrap());
}

#[test]
fn malformed_input_reports_the_line() {
    let cases = [
        ("catec v1 nodes=3 categories=2\n1\tx y\n3\tx z\n", 3),
        ("catec v1 nodes=3 categories=2\n1\t-2\tx y\n", 2),
        ("catec v1 nodes=2 categories=2\n\n1\tx y z\n", 3),
        ("catec v1 nodes=3 categories=2\n1\tx\n", 2),
        ("catec v2 nodes=3 categories=2\n", 1),
    ];
    for (text, line) in cases {
        match parse_hypergraph(text).unwrap_err() {
            Error::Parse { line: got, .. } | Error::LabelOutOfRange { line: got, .. } => {
                assert_eq!(got, line, "{text:?}")
            }
            other => panic!("{text:?}: {other}"),
        }
    }
    assert!(matches!(
        parse_hypergraph("catec v1 nodes=3 categories=2\n1\tx x\n"),
        Err(Error::DuplicateNodeInEdge { line: 2, .. })
    ));
}
