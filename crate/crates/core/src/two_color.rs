//! Exact solver for two categories via minimum s-t cut.
//!
//! Category 1 is the source terminal and category 2 the sink. Graph inputs
//! use the half-weight triangle reduction; hypergraphs use one auxiliary
//! node per edge with directed arcs, so each edge's gadget costs exactly its
//! weight when the edge is a mistake and nothing otherwise.

use crate::error::{Error, Result};
use crate::flow::{min_cut, FlowNetwork};
use crate::hypergraph::{objective, Clustering, LabeledHypergraph};

fn require_two_categories(h: &LabeledHypergraph) -> Result<()> {
    if h.category_count() != 2 {
        return Err(Error::WrongCategoryCount {
            expected: 2,
            found: h.category_count(),
        });
    }
    Ok(())
}

/// Network on `n + 2` nodes (`n` = source for category 1, `n + 1` = sink for
/// category 2). Each edge `(i, j)` of category `c` adds undirected edges
/// `(i, j)`, `(v_c, i)`, `(v_c, j)` of capacity `w/2`. An unlabeled edge adds
/// only `(i, j)` at capacity `w`, which is cut exactly when its ends split.
pub fn build_graph_reduction(h: &LabeledHypergraph) -> Result<FlowNetwork> {
    require_two_categories(h)?;
    if let Some((edge, e)) = h.edges().iter().enumerate().find(|(_, e)| e.len() > 2) {
        return Err(Error::WrongArity {
            edge,
            size: e.len(),
            expected: 2,
        });
    }
    let n = h.node_count();
    let mut net = FlowNetwork::new(n + 2, n, n + 1);
    for e in h.edges() {
        let (i, j) = (e.nodes()[0], e.nodes()[1]);
        let w = e.weight();
        if e.is_wildcard() {
            net.add_edge(i, j, w);
            continue;
        }
        let terminal = n + e.label() as usize - 1;
        let half = w / 2.0;
        net.add_edge(i, j, half);
        net.add_edge(terminal, i, half);
        net.add_edge(terminal, j, half);
    }
    Ok(net)
}

/// Network for any edge size. Node layout: originals `0..n`, source `n`,
/// sink `n + 1`, then auxiliary nodes in edge order.
///
/// * category 1: `(s, u_e)` and `(u_e, v)` for `v ∈ e`, all of capacity `w_e`;
/// * category 2: `(v, u_e)` for `v ∈ e` and `(u_e, t)`;
/// * unlabeled: two auxiliaries `u′, u″` with `(v, u′)`, `(u′, u″)`,
///   `(u″, v)`, which costs `w_e` exactly when `e` is split.
pub fn build_hypergraph_reduction(h: &LabeledHypergraph) -> Result<FlowNetwork> {
    require_two_categories(h)?;
    let n = h.node_count();
    let (s, t) = (n, n + 1);
    let aux_count: usize = h
        .edges()
        .iter()
        .map(|e| if e.is_wildcard() { 2 } else { 1 })
        .sum();
    let mut net = FlowNetwork::new(n + 2 + aux_count, s, t);
    let mut next = n + 2;
    for e in h.edges() {
        let w = e.weight();
        match e.label() {
            1 => {
                let u = next;
                next += 1;
                net.add_arc(s, u, w);
                for &v in e.nodes() {
                    net.add_arc(u, v, w);
                }
            }
            2 => {
                let u = next;
                next += 1;
                for &v in e.nodes() {
                    net.add_arc(v, u, w);
                }
                net.add_arc(u, t, w);
            }
            _ => {
                let (into, out) = (next, next + 1);
                next += 2;
                for &v in e.nodes() {
                    net.add_arc(v, into, w);
                }
                net.add_arc(into, out, w);
                for &v in e.nodes() {
                    net.add_arc(out, v, w);
                }
            }
        }
    }
    Ok(net)
}

/// The reduction [`solve_two_color`] uses: the smaller pairwise one for
/// graphs, the gadget one otherwise.
pub fn build_reduction(h: &LabeledHypergraph) -> Result<FlowNetwork> {
    if h.max_edge_size() <= 2 {
        build_graph_reduction(h)
    } else {
        build_hypergraph_reduction(h)
    }
}

/// Optimal clustering for `k = 2` and its objective value.
pub fn solve_two_color(h: &LabeledHypergraph) -> Result<(Clustering, f64)> {
    let cut = min_cut(&build_reduction(h)?)?;
    let labels = (0..h.node_count())
        .map(|v| if cut.source_side[v] { 1 } else { 2 })
        .collect();
    let y = Clustering::new(labels);
    let value = objective(h, &y);
    debug_assert!((value - cut.value).abs() <= 1e-9 * value.max(1.0));
    Ok((y, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{brute_force_optimum, HyperEdge};

    fn triangle() -> LabeledHypergraph {
        LabeledHypergraph::new(
            3,
            2,
            vec![
                HyperEdge::unit(vec![0, 1], 1),
                HyperEdge::unit(vec![1, 2], 2),
                HyperEdge::unit(vec![0, 2], 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_edge_graph_reduction() {
        let h = LabeledHypergraph::new(2, 2, vec![HyperEdge::unit(vec![0, 1], 1)]).unwrap();
        let net = build_graph_reduction(&h).unwrap();
        assert_eq!(net.node_count(), 4);
        // three undirected half edges
        assert_eq!(net.arcs().len(), 6);
        assert!(net.arcs().iter().all(|a| a.capacity == 0.5));
        assert_eq!(min_cut(&net).unwrap().value, 0.0);
    }

    #[test]
    fn triangle_cut_is_one() {
        let net = build_graph_reduction(&triangle()).unwrap();
        assert_eq!(min_cut(&net).unwrap().value, 1.0);
        let net = build_hypergraph_reduction(&triangle()).unwrap();
        assert_eq!(min_cut(&net).unwrap().value, 1.0);
    }

    #[test]
    fn graph_reduction_guards() {
        let h = LabeledHypergraph::new(3, 2, vec![HyperEdge::unit(vec![0, 1, 2], 1)]).unwrap();
        assert!(matches!(
            build_graph_reduction(&h),
            Err(Error::WrongArity { size: 3, .. })
        ));
        let h = LabeledHypergraph::new(3, 3, vec![HyperEdge::unit(vec![0, 1], 1)]).unwrap();
        assert!(matches!(
            build_graph_reduction(&h),
            Err(Error::WrongCategoryCount { found: 3, .. })
        ));
        assert!(matches!(
            build_hypergraph_reduction(&h),
            Err(Error::WrongCategoryCount { found: 3, .. })
        ));
    }

    #[test]
    fn single_hyperedge() {
        let h = LabeledHypergraph::new(3, 2, vec![HyperEdge::unit(vec![0, 1, 2], 1)]).unwrap();
        let net = build_hypergraph_reduction(&h).unwrap();
        assert_eq!(net.node_count(), 3 + 1 + 2);
        let cut = min_cut(&net).unwrap();
        assert_eq!(cut.value, 0.0);
        assert!(cut.source_side[..3].iter().all(|&b| b));
    }

    #[test]
    fn conflicting_hyperedges() {
        let h = LabeledHypergraph::new(
            3,
            2,
            vec![
                HyperEdge::unit(vec![0, 1, 2], 1),
                HyperEdge::unit(vec![0, 1, 2], 2),
            ],
        )
        .unwrap();
        let (y, value) = solve_two_color(&h).unwrap();
        assert_eq!(value, 1.0);
        assert_eq!(value, brute_force_optimum(&h).unwrap().1);
        assert_eq!(objective(&h, &y), 1.0);
    }

    #[test]
    fn monochromatic_is_free() {
        let h = LabeledHypergraph::new(
            4,
            2,
            vec![
                HyperEdge::unit(vec![0, 1, 2], 2),
                HyperEdge::unit(vec![2, 3], 2),
            ],
        )
        .unwrap();
        let (y, value) = solve_two_color(&h).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(y.labels(), &[2, 2, 2, 2]);
    }

    #[test]
    fn wildcard_gadgets_are_exact() {
        let h = LabeledHypergraph::new(
            4,
            2,
            vec![
                HyperEdge::new(vec![0, 1, 2, 3], 0, 2.0),
                HyperEdge::unit(vec![0, 1], 1),
                HyperEdge::unit(vec![2, 3], 2),
            ],
        )
        .unwrap();
        let (_, value) = solve_two_color(&h).unwrap();
        assert_eq!(value, brute_force_optimum(&h).unwrap().1);
        assert_eq!(value, 1.0);

        let g = LabeledHypergraph::new(
            2,
            2,
            vec![
                HyperEdge::new(vec![0, 1], 0, 3.0),
                HyperEdge::unit(vec![0, 1], 1),
            ],
        )
        .unwrap();
        let (y, value) = solve_two_color(&g).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(y.labels(), &[1, 1]);
    }
}
