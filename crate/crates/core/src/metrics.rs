//! Evaluation measures for clusterings.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{objective, Category, Clustering, HyperEdge, LabeledHypergraph, TemporalEdges};
use crate::report::approx_ratio;

/// Fraction of edge weight that is satisfied.
pub fn edge_satisfaction(h: &LabeledHypergraph, y: &Clustering) -> Result<f64> {
    let total = h.total_weight();
    if h.edge_count() == 0 || total <= 0.0 {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(((total - objective(h, y)) / total).clamp(0.0, 1.0))
}

fn same_length(a: &[Category], b: &[Category]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Fraction of nodes whose category equals the true one.
pub fn node_accuracy(y: &[Category], truth: &[Category]) -> Result<f64> {
    same_length(y, truth)?;
    if y.is_empty() {
        return Ok(1.0);
    }
    let hits = y.iter().zip(truth).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / y.len() as f64)
}

fn pairs(x: u64) -> f64 {
    (x * x.saturating_sub(1) / 2) as f64
}

/// Pair counts `(same in both, same in a, same in b)`.
fn pair_counts(a: &[Category], b: &[Category]) -> (f64, f64, f64) {
    let mut joint: HashMap<(Category, Category), u64> = HashMap::new();
    let mut left: HashMap<Category, u64> = HashMap::new();
    let mut right: HashMap<Category, u64> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1;
        *left.entry(x).or_default() += 1;
        *right.entry(y).or_default() += 1;
    }
    fn sum<K>(m: HashMap<K, u64>) -> f64 {
        m.into_values().map(pairs).sum()
    }
    (sum(joint), sum(left), sum(right))
}

/// Adjusted Rand index. Degenerate cases where the index is undefined (both
/// partitions trivial in the same way) count as perfect agreement.
pub fn ari(y: &[Category], truth: &[Category]) -> Result<f64> {
    same_length(y, truth)?;
    let (index, a, b) = pair_counts(y, truth);
    let total = pairs(y.len() as u64);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = a * b / total;
    let max = (a + b) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Harmonic mean of pairwise precision and recall, where a pair counts as
/// predicted (resp. true) when both nodes share a cluster in `y` (resp.
/// `truth`). Two partitions with no co-clustered pairs score 1.
pub fn pairwise_f_score(y: &[Category], truth: &[Category]) -> Result<f64> {
    same_length(y, truth)?;
    let (both, predicted, actual) = pair_counts(y, truth);
    if predicted == 0.0 && actual == 0.0 {
        return Ok(1.0);
    }
    if both == 0.0 {
        return Ok(0.0);
    }
    let precision = both / predicted;
    let recall = both / actual;
    Ok(2.0 * precision * recall / (precision + recall))
}

/// `Σ_i cut(S_i) / vol(S_i)` over clusters, where the volume is the edge
/// weight at the cluster's endpoints. Clusters with zero volume add nothing.
pub fn normalized_cut(g: &LabeledHypergraph, y: &Clustering) -> Result<f64> {
    if let Some((edge, e)) = g.edges().iter().enumerate().find(|(_, e)| e.len() != 2) {
        return Err(Error::WrongArity {
            edge,
            size: e.len(),
            expected: 2,
        });
    }
    let mut cut: HashMap<Category, f64> = HashMap::new();
    let mut vol: HashMap<Category, f64> = HashMap::new();
    for e in g.edges() {
        let (a, b) = (y[e.nodes()[0]], y[e.nodes()[1]]);
        *vol.entry(a).or_default() += e.weight();
        *vol.entry(b).or_default() += e.weight();
        if a != b {
            *cut.entry(a).or_default() += e.weight();
            *cut.entry(b).or_default() += e.weight();
        }
    }
    let mut clusters: Vec<_> = vol.into_iter().filter(|&(_, v)| v > 0.0).collect();
    // fixed summation order keeps the result independent of hashing
    clusters.sort_unstable_by_key(|&(c, _)| c);
    Ok(clusters
        .iter()
        .map(|(c, v)| cut.get(c).copied().unwrap_or(0.0) / v)
        .sum())
}

/// Mean absolute deviation of interior edge timestamps from their cluster's
/// mean interior timestamp. An edge is interior when all its nodes share a
/// cluster.
pub fn avg_time_diff(t: &TemporalEdges, y: &Clustering) -> Result<f64> {
    if y.len() != t.node_count() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: t.node_count(),
        });
    }
    let interior: Vec<(Category, f64)> = t
        .edges
        .iter()
        .filter_map(|e| {
            let c = y[e.nodes[0]];
            e.nodes.iter().all(|&v| y[v] == c).then_some((c, e.time))
        })
        .collect();
    if interior.is_empty() {
        return Err(Error::NoInteriorEdges);
    }
    let mut sums: HashMap<Category, (f64, usize)> = HashMap::new();
    for &(c, time) in &interior {
        let s = sums.entry(c).or_default();
        s.0 += time;
        s.1 += 1;
    }
    let deviation: f64 = interior
        .iter()
        .map(|&(c, time)| {
            let (sum, count) = sums[&c];
            (time - sum / count as f64).abs()
        })
        .sum();
    Ok(deviation / interior.len() as f64)
}

/// Per-node lower bound on mistakes, `B_v = Σ_c d_v^c - max_c d_v^c`, over
/// weighted labeled degrees.
pub fn mistake_lower_bounds(h: &LabeledHypergraph) -> Vec<f64> {
    h.category_degrees()
        .iter()
        .map(|d| {
            let total: f64 = d.iter().sum();
            let max = d.iter().copied().fold(0.0, f64::max);
            total - max
        })
        .collect()
}

/// Instance left after [`degree_filter`].
#[derive(Debug, Clone, PartialEq)]
pub struct Filtered {
    pub instance: LabeledHypergraph,
    /// Removed nodes, as sorted indices of the input.
    pub removed: Vec<usize>,
    /// Input index of every kept node, indexed by its new index.
    pub kept: Vec<usize>,
}

/// Removes every node with `B_v > beta` (see [`mistake_lower_bounds`]) along
/// with all edges touching it, then renumbers the remaining nodes densely in
/// their original order. Node names carry over.
pub fn degree_filter(h: &LabeledHypergraph, beta: f64) -> Result<Filtered> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::BadParameter(format!("beta = {beta} must be >= 0")));
    }
    let bounds = mistake_lower_bounds(h);
    let drop: Vec<bool> = bounds.iter().map(|&b| b > beta).collect();
    let mut new_index = vec![usize::MAX; h.node_count()];
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for v in 0..h.node_count() {
        if drop[v] {
            removed.push(v);
        } else {
            new_index[v] = kept.len();
            kept.push(v);
        }
    }
    let edges = h
        .edges()
        .iter()
        .filter(|e| e.nodes().iter().all(|&v| !drop[v]))
        .map(|e| {
            let nodes: Vec<usize> = e.nodes().iter().map(|&v| new_index[v]).collect();
            HyperEdge::new(nodes, e.label(), e.weight())
        })
        .collect();
    let mut instance = LabeledHypergraph::new(kept.len(), h.category_count(), edges)?;
    if let Some(names) = h.node_names() {
        instance = instance.with_node_names(kept.iter().map(|&v| names[v].clone()).collect())?;
    }
    Ok(Filtered {
        instance,
        removed,
        kept,
    })
}

/// Number of nodes in no satisfied edge. Nodes in no edge at all count.
pub fn unused_nodes(h: &LabeledHypergraph, y: &Clustering) -> usize {
    let mut used = vec![false; h.node_count()];
    for e in h.edges().iter().filter(|e| !e.is_mistake(y)) {
        for &v in e.nodes() {
            used[v] = true;
        }
    }
    used.iter().filter(|&&u| !u).count()
}

/// Everything `eval` reports about one clustering.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub objective: f64,
    pub lower_bound: Option<f64>,
    pub approx_ratio: Option<f64>,
    pub edge_satisfaction: Option<f64>,
    pub node_accuracy: Option<f64>,
    pub ari: Option<f64>,
    pub f_score: Option<f64>,
    pub ncut: Option<f64>,
    pub avg_time_diff: Option<f64>,
    pub unused_nodes: usize,
}

/// Optional side information for [`evaluate`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalInputs<'a> {
    pub truth: Option<&'a [Category]>,
    pub lower_bound: Option<f64>,
    pub temporal: Option<&'a TemporalEdges>,
}

/// Computes every applicable measure. Normalized cut is reported for graphs
/// only, and time deviation only when timestamps are given and some edge is
/// interior.
pub fn evaluate(h: &LabeledHypergraph, y: &Clustering, inputs: EvalInputs) -> Result<EvalReport> {
    y.check_for(h)?;
    let obj = objective(h, y);
    let mut report = EvalReport {
        objective: obj,
        lower_bound: inputs.lower_bound,
        approx_ratio: inputs.lower_bound.and_then(|lb| approx_ratio(obj, lb)),
        edge_satisfaction: edge_satisfaction(h, y).ok(),
        unused_nodes: unused_nodes(h, y),
        ..EvalReport::default()
    };
    if let Some(truth) = inputs.truth {
        report.node_accuracy = Some(node_accuracy(y.labels(), truth)?);
        report.ari = Some(ari(y.labels(), truth)?);
        report.f_score = Some(pairwise_f_score(y.labels(), truth)?);
    }
    if h.max_edge_size() <= 2 {
        report.ncut = Some(normalized_cut(h, y)?);
    }
    if let Some(t) = inputs.temporal {
        report.avg_time_diff = match avg_time_diff(t, y) {
            Ok(d) => Some(d),
            Err(Error::NoInteriorEdges) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(report)
}

impl EvalReport {
    /// Two aligned columns, one measure per row; absent measures are omitted.
    pub fn to_table(&self) -> String {
        let rows: Vec<(&str, Option<String>)> = vec![
            ("objective", Some(format_value(self.objective))),
            ("lower_bound", self.lower_bound.map(format_value)),
            ("approx_ratio", self.approx_ratio.map(format_value)),
            ("edge_satisfaction", self.edge_satisfaction.map(format_value)),
            ("node_accuracy", self.node_accuracy.map(format_value)),
            ("ari", self.ari.map(format_value)),
            ("f_score", self.f_score.map(format_value)),
            ("ncut", self.ncut.map(format_value)),
            ("avg_time_diff", self.avg_time_diff.map(format_value)),
            ("unused_nodes", Some(self.unused_nodes.to_string())),
        ];
        let width = rows.iter().map(|(name, _)| name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (name, value) in rows {
            if let Some(value) = value {
                let _ = writeln!(out, "{name:<width$}  {value}");
            }
        }
        out
    }
}

fn format_value(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:.6}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::TemporalEdge;

    fn two_triangles() -> LabeledHypergraph {
        let pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        let edges = pairs
            .iter()
            .map(|&(a, b)| HyperEdge::unit(vec![a, b], 1))
            .collect();
        LabeledHypergraph::new(6, 2, edges).unwrap()
    }

    #[test]
    fn satisfaction() {
        let g = two_triangles();
        assert_eq!(edge_satisfaction(&g, &Clustering::uniform(6, 1)).unwrap(), 1.0);
        assert_eq!(edge_satisfaction(&g, &Clustering::uniform(6, 2)).unwrap(), 0.0);
        let empty = LabeledHypergraph::new(2, 2, vec![]).unwrap();
        assert!(matches!(
            edge_satisfaction(&empty, &Clustering::uniform(2, 1)),
            Err(Error::EmptyEdgeSet)
        ));
    }

    #[test]
    fn accuracy() {
        assert_eq!(node_accuracy(&[1, 2, 1], &[1, 2, 1]).unwrap(), 1.0);
        assert_eq!(node_accuracy(&[1, 2, 1], &[2, 1, 2]).unwrap(), 0.0);
        assert_eq!(node_accuracy(&[1, 1, 2, 2], &[1, 2, 2, 1]).unwrap(), 0.5);
        assert!(matches!(
            node_accuracy(&[1], &[1, 2]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn ari_and_f() {
        let a = [1, 1, 2, 2, 3, 3];
        assert_eq!(ari(&a, &a).unwrap(), 1.0);
        assert_eq!(pairwise_f_score(&a, &a).unwrap(), 1.0);
        assert_eq!(ari(&a, &[3, 3, 1, 1, 2, 2]).unwrap(), 1.0);

        // contingency of [1,1,1,2,2,2] vs [1,1,2,2,3,3]:
        // joint pairs 1+0+1+0... = C(2,2)+C(1,2)+C(1,2)+C(2,2) = 2
        // left pairs 3+3 = 6, right pairs 1+1+1 = 3, all pairs 15
        // expected = 18/15, max = 4.5 → (2 - 1.2) / (4.5 - 1.2)
        let x = [1, 1, 1, 2, 2, 2];
        let z = [1, 1, 2, 2, 3, 3];
        let want = (2.0 - 1.2) / (4.5 - 1.2);
        assert!((ari(&x, &z).unwrap() - want).abs() < 1e-12);
        // precision 2/6, recall 2/3
        let (p, r) = (2.0 / 6.0, 2.0 / 3.0);
        assert!((pairwise_f_score(&x, &z).unwrap() - 2.0 * p * r / (p + r)).abs() < 1e-12);

        // all singletons on both sides
        assert_eq!(ari(&[1, 2, 3], &[3, 2, 1]).unwrap(), 1.0);
        assert_eq!(pairwise_f_score(&[1, 2, 3], &[3, 2, 1]).unwrap(), 1.0);
        assert_eq!(pairwise_f_score(&[1, 1, 1], &[1, 2, 3]).unwrap(), 0.0);
        assert!(ari(&[1], &[]).is_err());
    }

    #[test]
    fn ncut_examples() {
        let g = two_triangles();
        assert_eq!(normalized_cut(&g, &Clustering::uniform(6, 1)).unwrap(), 0.0);
        let split = Clustering::new(vec![1, 1, 1, 2, 2, 2]);
        assert!((normalized_cut(&g, &split).unwrap() - 2.0 / 7.0).abs() < 1e-12);
        let relabeled = Clustering::new(vec![2, 2, 2, 1, 1, 1]);
        assert_eq!(
            normalized_cut(&g, &split).unwrap(),
            normalized_cut(&g, &relabeled).unwrap()
        );

        let one = LabeledHypergraph::new(2, 2, vec![HyperEdge::unit(vec![0, 1], 1)]).unwrap();
        assert_eq!(
            normalized_cut(&one, &Clustering::new(vec![1, 2])).unwrap(),
            2.0
        );
        let hyper = LabeledHypergraph::new(3, 2, vec![HyperEdge::unit(vec![0, 1, 2], 1)]).unwrap();
        assert!(normalized_cut(&hyper, &Clustering::uniform(3, 1)).is_err());
    }

    fn stamped(edges: &[(f64, usize, usize)]) -> TemporalEdges {
        TemporalEdges {
            node_names: (0..4).map(|i| i.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(time, a, b)| TemporalEdge {
                    time,
                    nodes: vec![a, b],
                })
                .collect(),
        }
    }

    #[test]
    fn time_deviation() {
        let t = stamped(&[(0.0, 0, 1), (10.0, 1, 2)]);
        assert_eq!(avg_time_diff(&t, &Clustering::uniform(4, 1)).unwrap(), 5.0);
        let t = stamped(&[(3.0, 0, 1), (3.0, 2, 3), (100.0, 1, 2)]);
        let y = Clustering::new(vec![1, 1, 2, 2]);
        // the crossing edge at time 100 is ignored
        assert_eq!(avg_time_diff(&t, &y).unwrap(), 0.0);
        let y = Clustering::new(vec![1, 2, 1, 2]);
        assert!(matches!(avg_time_diff(&t, &y), Err(Error::NoInteriorEdges)));
    }

    #[test]
    fn filter_by_mistake_bound() {
        let mut edges = Vec::new();
        for _ in 0..5 {
            edges.push(HyperEdge::unit(vec![0, 1], 1));
        }
        for _ in 0..3 {
            edges.push(HyperEdge::unit(vec![0, 2], 2));
        }
        edges.push(HyperEdge::unit(vec![3, 4, 5], 1));
        let h = LabeledHypergraph::new(6, 2, edges).unwrap();
        assert_eq!(mistake_lower_bounds(&h), vec![3.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

        let f = degree_filter(&h, 3.0).unwrap();
        assert!(f.removed.is_empty());
        assert_eq!(f.instance, h);

        let f = degree_filter(&h, 2.9).unwrap();
        assert_eq!(f.removed, vec![0]);
        assert_eq!(f.kept, vec![1, 2, 3, 4, 5]);
        assert_eq!(f.instance.edges(), &[HyperEdge::unit(vec![2, 3, 4], 1)]);

        let f = degree_filter(&h, f64::INFINITY).unwrap();
        assert_eq!(f.instance, h);
        let f = degree_filter(&h, 0.0).unwrap();
        assert_eq!(f.removed, vec![0]);
        assert!(degree_filter(&h, -1.0).is_err());
    }

    #[test]
    fn unused() {
        let h = LabeledHypergraph::new(
            4,
            2,
            vec![HyperEdge::unit(vec![0, 1], 1), HyperEdge::unit(vec![1, 2], 2)],
        )
        .unwrap();
        // node 3 is in no edge, node 2's only edge is a mistake
        assert_eq!(unused_nodes(&h, &Clustering::new(vec![1, 1, 2, 1])), 2);
        assert_eq!(unused_nodes(&h, &Clustering::new(vec![1, 1, 1, 1])), 2);
        let h = LabeledHypergraph::new(2, 2, vec![HyperEdge::unit(vec![0, 1], 1)]).unwrap();
        assert_eq!(unused_nodes(&h, &Clustering::uniform(2, 1)), 0);
    }

    #[test]
    fn full_evaluation() {
        let g = two_triangles();
        let y = Clustering::new(vec![1, 1, 1, 2, 2, 2]);
        let truth = [1, 1, 1, 1, 1, 1];
        let report = evaluate(
            &g,
            &y,
            EvalInputs {
                truth: Some(&truth),
                lower_bound: Some(0.0),
                temporal: None,
            },
        )
        .unwrap();
        assert_eq!(report.objective, 4.0);
        assert_eq!(report.approx_ratio, None);
        assert_eq!(report.node_accuracy, Some(0.5));
        assert!(report.ari.is_some() && report.f_score.is_some());
        assert_eq!(report.avg_time_diff, None);
        let table = report.to_table();
        assert!(table.contains("objective          4\n"));
        assert!(table.contains("node_accuracy      0.5"));
        assert!(!table.contains("approx_ratio"));
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(serde_json::from_str::<EvalReport>(&json).unwrap(), report);
    }
}
