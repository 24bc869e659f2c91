mod common;

use catec_core::lp::{
    build_lp, lower_bound, round_deterministic, round_randomized, solve_lp, theorem_threshold,
};
use catec_core::{objective, HyperEdge, LabeledHypergraph};
use common::{exhaustive_optimum, instances, rank, Shape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-7;

fn permute(h: &LabeledHypergraph, sigma: &[u32]) -> LabeledHypergraph {
    let edges = h
        .edges()
        .iter()
        .map(|e| HyperEdge::new(e.nodes().to_vec(), sigma[e.label() as usize - 1], e.weight()))
        .collect();
    LabeledHypergraph::new(h.node_count(), h.category_count(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn bound_optimum_and_rounding_are_sandwiched(h in instances(Shape::default(), None)) {
        let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
        let lb = lower_bound(&sol);
        let opt = exhaustive_optimum(&h);
        let rounded = objective(&h, &round_deterministic(&sol));
        prop_assert!(lb <= opt + TOL, "lb {lb} > opt {opt}");
        prop_assert!(opt <= rounded + TOL);
        prop_assert!(rounded <= 2.0 * lb + TOL, "{rounded} > 2 * {lb}");
    }

    #[test]
    fn two_categories_give_integral_solutions(h in instances(Shape::default(), Some(2))) {
        let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
        prop_assert!(sol.is_integral());
        let y = round_deterministic(&sol);
        prop_assert!((objective(&h, &y) - lower_bound(&sol)).abs() <= TOL);
    }

    #[test]
    fn few_categories_fall_below_thresholds(h in instances(Shape::default(), None)) {
        let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
        for v in 0..h.node_count() {
            let x = sol.node_values(v);
            prop_assert!(x.iter().filter(|&&z| z < 0.5).count() <= 1);
            prop_assert!(x.iter().filter(|&&z| z < 2.0 / 3.0).count() <= 2);
            prop_assert!((x.iter().sum::<f64>() - (h.category_count() - 1) as f64).abs() <= TOL);
        }
    }

    #[test]
    fn deterministic_rounding_follows_category_relabeling(
        h in instances(Shape::default(), None),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let k = h.category_count();
        let mut sigma: Vec<u32> = (1..=k).collect();
        sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let lp = build_lp(&h).unwrap();
        let sol = solve_lp(&lp).unwrap();

        // the same point, with category c's values moved to sigma(c)
        let g = permute(&h, &sigma);
        let glp = build_lp(&g).unwrap();
        let mut moved = sol.values().to_vec();
        for v in 0..h.node_count() {
            for c in 1..=k {
                moved[glp.node_var(v, sigma[c as usize - 1])] = sol.node_value(v, c);
            }
        }
        let gsol = glp.accept(moved).unwrap();
        prop_assert!((lower_bound(&gsol) - lower_bound(&sol)).abs() <= TOL);

        let y = round_deterministic(&sol);
        let z = round_deterministic(&gsol);
        for v in 0..h.node_count() {
            // undecided nodes fall back to majority vote, whose tie-break is
            // not symmetric under relabeling
            if sol.node_values(v).iter().any(|&x| x < 0.5 - 1e-9) {
                prop_assert_eq!(z[v], sigma[y[v] as usize - 1]);
            }
        }
    }

    #[test]
    fn randomized_rounding_stays_within_twice_the_bound(
        h in instances(Shape::default(), None),
        seed in any::<u64>(),
    ) {
        let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
        let t = theorem_threshold(h.category_count(), rank(&h));
        let y = round_randomized(&sol, t, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        // each edge pays at most 1/(1 - t) <= 3 times its LP cost
        prop_assert!(objective(&h, &y) <= 3.0 * lower_bound(&sol) + TOL);
    }
}

#[test]
fn triangle_bound() {
    let h = LabeledHypergraph::new(
        3,
        2,
        vec![
            HyperEdge::unit(vec![0, 1], 1),
            HyperEdge::unit(vec![1, 2], 2),
            HyperEdge::unit(vec![0, 2], 1),
        ],
    )
    .unwrap();
    let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
    assert!((lower_bound(&sol) - 1.0).abs() < 1e-9);
}

#[test]
fn planted_instance_of_realistic_size() {
    use catec_core::synthetic::{gen_chromatic_graph, ChromaticParams};
    let params = ChromaticParams::graph(300, 10, 10, 0.1, 0.01, 0.0);
    let (h, _) = gen_chromatic_graph(&params, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let sol = solve_lp(&build_lp(&h).unwrap()).unwrap();
    let y = round_deterministic(&sol);
    assert!(objective(&h, &y) <= 2.0 * lower_bound(&sol) + TOL);
}
