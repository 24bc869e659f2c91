mod common;

use catec_core::lp::{build_lp, lower_bound, solve_lp};
use catec_core::multiway::{
    build_multiway_graph, build_nwmc_graph, cat_isocut, isolating_cuts, multiway_cut_value,
};
use catec_core::two_color::solve_two_color;
use catec_core::{objective, Clustering};
use common::{instances, mistakes, Shape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_labels(n: usize, k: u32, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(1..=k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cut_value_is_sandwiched(h in instances(Shape::default(), None), seed in any::<u64>()) {
        let tg = build_multiway_graph(&h).unwrap();
        let y = random_labels(h.node_count(), h.category_count(), seed);
        let clustering = Clustering::new(y.clone());
        let cut = multiway_cut_value(&tg, &clustering);
        let obj = mistakes(&h, &y);
        let r = common::rank(&h) as f64;
        prop_assert!(obj <= cut + 1e-9, "{obj} > {cut}");
        prop_assert!(cut <= (r + 1.0) / 2.0 * obj + 1e-9, "{cut} > {} * {obj}", (r + 1.0) / 2.0);
    }

    #[test]
    fn separating_aux_weight_is_the_objective(
        h in instances(Shape { wildcards: true, ..Shape::default() }, None),
        seed in any::<u64>(),
    ) {
        let g = build_nwmc_graph(&h);
        let y = random_labels(h.node_count(), h.category_count(), seed);
        prop_assert_eq!(g.separating_weight(&Clustering::new(y.clone())), mistakes(&h, &y));
    }

    #[test]
    fn isocut_is_never_below_the_bound(h in instances(Shape::default(), None)) {
        let y = cat_isocut(&h).unwrap();
        y.check_for(&h).unwrap();
        let lb = lower_bound(&solve_lp(&build_lp(&h).unwrap()).unwrap());
        prop_assert!(objective(&h, &y) >= lb - 1e-7);
    }

    #[test]
    fn two_terminal_isocut_is_exact_on_graphs(
        h in instances(Shape { max_edge_size: 2, max_edges: 20, ..Shape::default() }, Some(2))
    ) {
        let (_, exact) = solve_two_color(&h).unwrap();
        let y = cat_isocut(&h).unwrap();
        prop_assert!((objective(&h, &y) - exact).abs() < 1e-9);
    }

    #[test]
    fn kept_cuts_are_disjoint_and_cheap(h in instances(Shape::default(), None)) {
        let tg = build_multiway_graph(&h).unwrap();
        let result = isolating_cuts(&tg).unwrap();
        let worst = result.cut_values.iter().copied().fold(f64::MIN, f64::max);
        prop_assert!(result.cut_values[result.discarded as usize - 1] >= worst - 1e-9);
        // nodes in some edge always end up assigned
        for e in h.edges() {
            for &v in e.nodes() {
                prop_assert!(result.labels[v].is_some());
            }
        }
    }
}
