//! Reductions to multiway cut and the isolating-cuts heuristic.
//!
//! Graph layout: original nodes `0..n`, then one terminal per category at
//! `n + c - 1`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::baselines::majority_vote;
use crate::error::{Error, Result};
use crate::flow::{min_cut, FlowNetwork};
use crate::hypergraph::{Category, Clustering, LabeledHypergraph};

/// Weighted undirected graph with one terminal per category.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalGraph {
    node_count: usize,
    category_count: u32,
    /// `(a, b, w)` with `a < b`, sorted, one entry per adjacent pair.
    edges: Vec<(usize, usize, f64)>,
}

impl TerminalGraph {
    /// Accumulates `edges` (in any order, repeated pairs summed) into a graph
    /// over `node_count` originals and `category_count` terminals.
    pub fn new(
        node_count: usize,
        category_count: u32,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Self {
        let total = node_count + category_count as usize;
        let mut acc: HashMap<(usize, usize), f64> = HashMap::new();
        for (a, b, w) in edges {
            assert!(a < total && b < total && a != b, "bad edge ({a}, {b})");
            *acc.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
        }
        let mut edges: Vec<_> = acc.into_iter().map(|((a, b), w)| (a, b, w)).collect();
        edges.sort_unstable_by_key(|&(a, b, _)| (a, b));
        TerminalGraph {
            node_count,
            category_count,
            edges,
        }
    }

    /// Number of original (non-terminal) nodes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn category_count(&self) -> u32 {
        self.category_count
    }

    pub fn total_nodes(&self) -> usize {
        self.node_count + self.category_count as usize
    }

    pub fn terminal(&self, c: Category) -> usize {
        self.node_count + c as usize - 1
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Weight between `a` and `b`, 0 if not adjacent.
    pub fn weight(&self, a: usize, b: usize) -> f64 {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by_key(&key, |&(x, y, _)| (x, y))
            .map_or(0.0, |i| self.edges[i].2)
    }

    fn class_of(&self, v: usize, y: &Clustering) -> Category {
        if v < self.node_count {
            y[v]
        } else {
            (v - self.node_count) as Category + 1
        }
    }
}

/// Each edge `e` of category `c` becomes a clique on `e ∪ {terminal c}` with
/// per-pair weight `w_e / |e|`. Overlapping cliques add up.
pub fn build_multiway_graph(h: &LabeledHypergraph) -> Result<TerminalGraph> {
    if let Some(edge) = h.edges().iter().position(|e| e.is_wildcard()) {
        return Err(Error::WildcardUnsupported { edge });
    }
    let n = h.node_count();
    let mut pairs = Vec::new();
    for e in h.edges() {
        let w = e.weight() / e.len() as f64;
        let terminal = n + e.label() as usize - 1;
        let nodes = e.nodes();
        for (i, &a) in nodes.iter().enumerate() {
            pairs.push((a, terminal, w));
            for &b in &nodes[i + 1..] {
                pairs.push((a, b, w));
            }
        }
    }
    Ok(TerminalGraph::new(n, h.category_count(), pairs))
}

/// Weight of edges whose ends lie in different classes, where original
/// nodes take their class from `y` and terminals their own category.
pub fn multiway_cut_value(tg: &TerminalGraph, y: &Clustering) -> f64 {
    tg.edges
        .iter()
        .filter(|&&(a, b, _)| tg.class_of(a, y) != tg.class_of(b, y))
        .map(|&(_, _, w)| w)
        .sum()
}

/// Result of the isolating-cuts heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatingCuts {
    /// Category per original node, `None` for nodes reachable from no terminal.
    pub labels: Vec<Option<Category>>,
    /// Minimum isolating cut value for each category, indexed by `c - 1`.
    pub cut_values: Vec<f64>,
    /// The category whose (most expensive) cut was dropped.
    pub discarded: Category,
}

/// Separates each terminal from all others with a minimum cut, drops the
/// most expensive cut (the highest category among ties), and assigns the
/// minimal source side of each kept cut to its terminal. Nodes still
/// connected to the dropped terminal once the kept sides are removed go to
/// the dropped category. Anything else stays unassigned.
pub fn isolating_cuts(tg: &TerminalGraph) -> Result<IsolatingCuts> {
    let n = tg.node_count;
    let k = tg.category_count;
    if k < 2 {
        return Err(Error::WrongCategoryCount {
            expected: 2,
            found: k,
        });
    }
    let total = tg.total_nodes();
    let cuts: Vec<_> = (1..=k)
        .into_par_iter()
        .map(|c| {
            let source = tg.terminal(c);
            let sink = total;
            let merge = |v: usize| if v >= n && v != source { sink } else { v };
            let mut net = FlowNetwork::new(total + 1, source, sink);
            for &(a, b, w) in &tg.edges {
                let (a, b) = (merge(a), merge(b));
                if a != b {
                    net.add_edge(a, b, w);
                }
            }
            min_cut(&net)
        })
        .collect::<Result<_>>()?;

    let cut_values: Vec<f64> = cuts.iter().map(|cut| cut.value).collect();
    let most = cut_values.iter().copied().fold(f64::MIN, f64::max);
    let tie = 1e-9 * most.abs().max(1.0);
    let discarded = (1..=k)
        .rev()
        .find(|&c| cut_values[c as usize - 1] >= most - tie)
        .expect("k >= 2");

    let mut claimed: Vec<Option<Category>> = vec![None; total];
    for c in (1..=k).filter(|&c| c != discarded) {
        for (v, &inside) in cuts[c as usize - 1].source_side[..total].iter().enumerate() {
            if inside && claimed[v].is_none() {
                claimed[v] = Some(c);
            }
        }
    }

    // Whatever the kept cuts leave connected to the dropped terminal is its.
    let mut adj = vec![Vec::new(); total];
    for &(a, b, _) in &tg.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let start = tg.terminal(discarded);
    if claimed[start].is_none() {
        claimed[start] = Some(discarded);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if claimed[w].is_none() {
                    claimed[w] = Some(discarded);
                    stack.push(w);
                }
            }
        }
    }
    claimed.truncate(n);
    Ok(IsolatingCuts {
        labels: claimed,
        cut_values,
        discarded,
    })
}

/// Isolating cuts on the multiway reduction of `h`, with unassigned nodes
/// filled in by majority vote.
pub fn cat_isocut(h: &LabeledHypergraph) -> Result<Clustering> {
    let tg = build_multiway_graph(h)?;
    let result = isolating_cuts(&tg)?;
    let fallback = majority_vote(h);
    let labels = result
        .labels
        .iter()
        .enumerate()
        .map(|(v, c)| c.unwrap_or(fallback[v]))
        .collect();
    Ok(Clustering::new(labels))
}

/// Node-weighted graph for the node-weighted multiway cut reduction.
///
/// Layout: originals `0..n`, terminals `n..n + k`, then one auxiliary node
/// per hyperedge. Only auxiliary nodes have finite weight.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeWeightedGraph {
    pub node_count: usize,
    pub category_count: u32,
    pub weights: Vec<f64>,
    pub adjacency: Vec<Vec<usize>>,
}

impl NodeWeightedGraph {
    pub fn aux(&self, e: usize) -> usize {
        self.node_count + self.category_count as usize + e
    }

    pub fn aux_count(&self) -> usize {
        self.weights.len() - self.node_count - self.category_count as usize
    }

    /// Total weight of auxiliary nodes whose neighbors span two or more
    /// classes under `y`. Deleting exactly those nodes separates the
    /// terminals, and their weight equals the clustering objective.
    pub fn separating_weight(&self, y: &Clustering) -> f64 {
        let n = self.node_count;
        let class = |v: usize| {
            if v < n {
                y[v]
            } else {
                (v - n) as Category + 1
            }
        };
        (0..self.aux_count())
            .map(|e| self.aux(e))
            .filter(|&a| {
                let mut classes = self.adjacency[a].iter().map(|&v| class(v));
                let first = classes.next();
                classes.any(|c| Some(c) != first)
            })
            .map(|a| self.weights[a])
            .sum()
    }
}

/// One auxiliary node of weight `w_e` per hyperedge, adjacent to the edge's
/// nodes and to the terminal of its category (no terminal for unlabeled
/// edges). Original and terminal nodes have infinite weight.
pub fn build_nwmc_graph(h: &LabeledHypergraph) -> NodeWeightedGraph {
    let n = h.node_count();
    let k = h.category_count() as usize;
    let total = n + k + h.edge_count();
    let mut weights = vec![f64::INFINITY; n + k];
    let mut adjacency = vec![Vec::new(); total];
    for (i, e) in h.edges().iter().enumerate() {
        let a = n + k + i;
        weights.push(e.weight());
        let mut members = e.nodes().to_vec();
        if !e.is_wildcard() {
            members.push(n + e.label() as usize - 1);
        }
        for &v in &members {
            adjacency[v].push(a);
        }
        adjacency[a] = members;
    }
    NodeWeightedGraph {
        node_count: n,
        category_count: h.category_count(),
        weights,
        adjacency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{objective, HyperEdge};
    use crate::two_color::solve_two_color;

    #[test]
    fn single_pair_is_a_triangle() {
        let h = LabeledHypergraph::new(2, 2, vec![HyperEdge::unit(vec![0, 1], 1)]).unwrap();
        let tg = build_multiway_graph(&h).unwrap();
        assert_eq!(tg.edges(), &[(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)]);
        assert_eq!(tg.terminal(1), 2);
        assert_eq!(tg.terminal(2), 3);
    }

    #[test]
    fn single_hyperedge_is_k4() {
        let h = LabeledHypergraph::new(3, 2, vec![HyperEdge::unit(vec![0, 1, 2], 1)]).unwrap();
        let tg = build_multiway_graph(&h).unwrap();
        assert_eq!(tg.edges().len(), 6);
        assert!(tg.edges().iter().all(|&(_, _, w)| w == 1.0 / 3.0));
    }

    #[test]
    fn overlapping_pairs_add() {
        let h = LabeledHypergraph::new(
            3,
            2,
            vec![
                HyperEdge::new(vec![0, 1], 1, 2.0),
                HyperEdge::new(vec![0, 1, 2], 2, 3.0),
            ],
        )
        .unwrap();
        let tg = build_multiway_graph(&h).unwrap();
        assert_eq!(tg.weight(0, 1), 1.0 + 1.0);
        assert_eq!(tg.weight(1, 0), 2.0);
        assert_eq!(tg.weight(0, tg.terminal(1)), 1.0);
        assert_eq!(tg.weight(0, tg.terminal(2)), 1.0);
        assert_eq!(tg.weight(2, tg.terminal(1)), 0.0);
    }

    #[test]
    fn wildcards_rejected() {
        let h = LabeledHypergraph::new(2, 2, vec![HyperEdge::unit(vec![0, 1], 0)]).unwrap();
        assert!(matches!(
            build_multiway_graph(&h),
            Err(Error::WildcardUnsupported { edge: 0 })
        ));
    }

    #[test]
    fn cut_value_examples() {
        let r = 4;
        let h = LabeledHypergraph::new(r, 5, vec![HyperEdge::unit((0..r).collect::<Vec<_>>(), 1)])
            .unwrap();
        let tg = build_multiway_graph(&h).unwrap();
        assert_eq!(multiway_cut_value(&tg, &Clustering::uniform(r, 1)), 0.0);
        let one_stray = Clustering::new(vec![1, 1, 1, 2]);
        assert!((multiway_cut_value(&tg, &one_stray) - 1.0).abs() < 1e-12);
        let all_distinct = Clustering::new(vec![2, 3, 4, 5]);
        let expected = (r as f64 + 1.0) / 2.0;
        assert!((multiway_cut_value(&tg, &all_distinct) - expected).abs() < 1e-12);
    }

    #[test]
    fn two_terminals_give_the_min_cut() {
        let h = LabeledHypergraph::new(
            5,
            2,
            vec![
                HyperEdge::unit(vec![0, 1], 1),
                HyperEdge::unit(vec![1, 2], 2),
                HyperEdge::unit(vec![0, 2], 1),
                HyperEdge::unit(vec![3, 4], 2),
            ],
        )
        .unwrap();
        let tg = build_multiway_graph(&h).unwrap();
        let result = isolating_cuts(&tg).unwrap();
        assert_eq!(result.cut_values[0], result.cut_values[1]);
        assert_eq!(result.discarded, 2);
        let y = cat_isocut(&h).unwrap();
        assert_eq!(objective(&h, &y), solve_two_color(&h).unwrap().1);
    }

    #[test]
    fn private_nodes_follow_their_terminal() {
        // each node is tied to one terminal by a unit edge
        let tg = TerminalGraph::new(3, 3, [(0, 3, 1.0), (1, 4, 1.0), (2, 5, 1.0)]);
        let result = isolating_cuts(&tg).unwrap();
        assert_eq!(result.labels, vec![Some(1), Some(2), Some(3)]);
        assert_eq!(result.cut_values, vec![0.0, 0.0, 0.0]);
        assert_eq!(result.discarded, 3);
        let y = Clustering::new(vec![1, 2, 3]);
        assert_eq!(multiway_cut_value(&tg, &y), 0.0);
    }

    #[test]
    fn star_with_shared_center() {
        // terminals joined through private nodes to one hub
        let tg = TerminalGraph::new(
            4,
            3,
            [
                (0, 4, 2.0),
                (1, 5, 2.0),
                (2, 6, 2.0),
                (0, 3, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
        );
        let result = isolating_cuts(&tg).unwrap();
        assert_eq!(result.cut_values, vec![1.0, 1.0, 1.0]);
        assert_eq!(result.discarded, 3);
        // the hub stays with the dropped terminal's side
        assert_eq!(result.labels, vec![Some(1), Some(2), Some(3), Some(3)]);
        let y = Clustering::new(vec![1, 2, 3, 3]);
        // k - 1 kept cuts
        assert_eq!(multiway_cut_value(&tg, &y), 2.0);
    }

    #[test]
    fn isolated_nodes_are_unassigned() {
        let h = LabeledHypergraph::new(3, 3, vec![HyperEdge::unit(vec![0, 1], 2)]).unwrap();
        let result = isolating_cuts(&build_multiway_graph(&h).unwrap()).unwrap();
        assert_eq!(result.labels, vec![Some(2), Some(2), None]);
        assert_eq!(cat_isocut(&h).unwrap().labels(), &[2, 2, 1]);
    }

    #[test]
    fn monochromatic_isocut_is_free() {
        let h = LabeledHypergraph::new(
            4,
            3,
            vec![HyperEdge::unit(vec![0, 1, 2], 2), HyperEdge::unit(vec![2, 3], 2)],
        )
        .unwrap();
        assert_eq!(objective(&h, &cat_isocut(&h).unwrap()), 0.0);
    }

    #[test]
    fn nwmc_structure() {
        let h = LabeledHypergraph::new(
            6,
            2,
            vec![
                HyperEdge::new(vec![0, 1, 2], 1, 2.0),
                HyperEdge::unit(vec![3, 4], 2),
                HyperEdge::unit(vec![4, 5], 0),
            ],
        )
        .unwrap();
        let g = build_nwmc_graph(&h);
        assert_eq!(g.aux_count(), 3);
        assert_eq!(g.adjacency[g.aux(0)], vec![0, 1, 2, 6]);
        assert_eq!(g.adjacency[g.aux(1)], vec![3, 4, 7]);
        assert_eq!(g.adjacency[g.aux(2)], vec![4, 5]);
        assert_eq!(g.weights[g.aux(0)], 2.0);
        assert!(g.weights[..8].iter().all(|w| w.is_infinite()));
        // disjoint edges have no neighbors in common
        assert_eq!(g.adjacency[0], vec![g.aux(0)]);
        for labels in [[1, 1, 1, 2, 2, 2], [1, 2, 1, 2, 1, 1], [2; 6]] {
            let y = Clustering::new(labels.to_vec());
            assert_eq!(g.separating_weight(&y), objective(&h, &y));
        }
    }
}
