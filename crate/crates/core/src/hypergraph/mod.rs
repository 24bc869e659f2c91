//! Problem instances: edge-labeled hypergraphs, node clusterings, and the
//! categorical edge clustering objective.
//!
//! Nodes are dense indices `0..n`. Categories are 1-based (`1..=k`); the
//! label [`WILDCARD`] marks an unlabeled edge, which only asks its nodes to
//! share *some* category.

mod brute;
mod temporal;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use brute::{brute_force_optimum, BRUTE_FORCE_LIMIT};
pub use temporal::{TemporalEdge, TemporalEdges};

/// A 1-based category id. `0` is reserved for [`WILDCARD`].
pub type Category = u32;

/// Label of an edge that belongs to no particular category.
pub const WILDCARD: Category = 0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperEdge {
    nodes: Vec<usize>,
    label: Category,
    weight: f64,
}

impl HyperEdge {
    /// Builds an edge; node indices are sorted. Duplicates are kept so that
    /// [`validate`] can report them.
    pub fn new(nodes: impl Into<Vec<usize>>, label: Category, weight: f64) -> Self {
        let mut nodes = nodes.into();
        nodes.sort_unstable();
        HyperEdge {
            nodes,
            label,
            weight,
        }
    }

    pub fn unit(nodes: impl Into<Vec<usize>>, label: Category) -> Self {
        Self::new(nodes, label, 1.0)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn label(&self) -> Category {
        self.label
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_wildcard(&self) -> bool {
        self.label == WILDCARD
    }

    /// Whether `clustering` makes this edge a mistake.
    pub fn is_mistake(&self, clustering: &Clustering) -> bool {
        let labels = clustering.labels();
        if self.is_wildcard() {
            let first = labels[self.nodes[0]];
            self.nodes.iter().any(|&v| labels[v] != first)
        } else {
            self.nodes.iter().any(|&v| labels[v] != self.label)
        }
    }
}

/// An edge-labeled hypergraph `(V, E, C, ℓ)` with positive edge weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledHypergraph {
    node_count: usize,
    category_count: u32,
    edges: Vec<HyperEdge>,
    node_names: Option<Vec<String>>,
    max_edge_size: usize,
}

impl LabeledHypergraph {
    /// Builds and validates an instance.
    pub fn new(node_count: usize, category_count: u32, edges: Vec<HyperEdge>) -> Result<Self> {
        let h = Self::new_unchecked(node_count, category_count, edges);
        let report = validate(&h);
        if report.is_valid() {
            Ok(h)
        } else {
            Err(Error::InvalidInstance(report))
        }
    }

    /// Builds an instance without checking invariants. Use [`validate`] to
    /// inspect the result; the solvers assume a valid instance.
    pub fn new_unchecked(node_count: usize, category_count: u32, edges: Vec<HyperEdge>) -> Self {
        let max_edge_size = edges.iter().map(HyperEdge::len).max().unwrap_or(0);
        LabeledHypergraph {
            node_count,
            category_count,
            edges,
            node_names: None,
            max_edge_size,
        }
    }

    /// Attaches external node ids. Names must be unique and one per node.
    pub fn with_node_names(mut self, names: Vec<String>) -> Result<Self> {
        self.node_names = Some(names);
        let report = validate(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidInstance(report))
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn category_count(&self) -> u32 {
        self.category_count
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge size `r` (0 for an empty edge set).
    pub fn max_edge_size(&self) -> usize {
        self.max_edge_size
    }

    pub fn node_names(&self) -> Option<&[String]> {
        self.node_names.as_deref()
    }

    /// External id of node `v`, or its index when the instance is unnamed.
    pub fn node_name(&self, v: usize) -> String {
        match &self.node_names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(HyperEdge::weight).sum()
    }

    pub fn has_wildcards(&self) -> bool {
        self.edges.iter().any(HyperEdge::is_wildcard)
    }

    /// Edge indices incident to each node.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e.nodes() {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Weighted label degree `d_v^c`, indexed `[v][c - 1]`; wildcard edges are skipped.
    pub fn category_degrees(&self) -> Vec<Vec<f64>> {
        let k = self.category_count as usize;
        let mut deg = vec![vec![0.0; k]; self.node_count];
        for e in &self.edges {
            if e.is_wildcard() {
                continue;
            }
            for &v in e.nodes() {
                deg[v][e.label as usize - 1] += e.weight;
            }
        }
        deg
    }
}

/// One broken invariant of a [`LabeledHypergraph`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NoNodes,
    NoCategories,
    EdgeTooSmall { edge: usize, size: usize },
    NodeOutOfRange { edge: usize, node: usize },
    DuplicateNode { edge: usize, node: usize },
    Unsorted { edge: usize },
    LabelOutOfRange { edge: usize, label: Category },
    BadWeight { edge: usize, weight: f64 },
    NameCount { names: usize, nodes: usize },
    DuplicateName { name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "instance has no nodes"),
            Violation::NoCategories => write!(f, "instance has no categories"),
            Violation::EdgeTooSmall { edge, size } => {
                write!(f, "edge {edge}: size {size} is below 2")
            }
            Violation::NodeOutOfRange { edge, node } => {
                write!(f, "edge {edge}: node out of range ({node})")
            }
            Violation::DuplicateNode { edge, node } => {
                write!(f, "edge {edge}: duplicate node {node}")
            }
            Violation::Unsorted { edge } => write!(f, "edge {edge}: nodes not sorted"),
            Violation::LabelOutOfRange { edge, label } => {
                write!(f, "edge {edge}: label out of range ({label})")
            }
            Violation::BadWeight { edge, weight } => {
                write!(f, "edge {edge}: weight {weight} is not finite and positive")
            }
            Violation::NameCount { names, nodes } => {
                write!(f, "{names} node names for {nodes} nodes")
            }
            Violation::DuplicateName { name } => write!(f, "duplicate node name `{name}`"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every invariant violation; an empty report means the instance is valid.
pub fn validate(h: &LabeledHypergraph) -> ValidationReport {
    let mut violations = Vec::new();
    if h.node_count == 0 {
        violations.push(Violation::NoNodes);
    }
    if h.category_count == 0 {
        violations.push(Violation::NoCategories);
    }
    for (i, e) in h.edges.iter().enumerate() {
        if e.nodes.len() < 2 {
            violations.push(Violation::EdgeTooSmall {
                edge: i,
                size: e.nodes.len(),
            });
        }
        for &v in &e.nodes {
            if v >= h.node_count {
                violations.push(Violation::NodeOutOfRange { edge: i, node: v });
            }
        }
        for w in e.nodes.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::DuplicateNode {
                    edge: i,
                    node: w[0],
                });
            } else if w[0] > w[1] {
                violations.push(Violation::Unsorted { edge: i });
            }
        }
        if e.label > h.category_count {
            violations.push(Violation::LabelOutOfRange {
                edge: i,
                label: e.label,
            });
        }
        if !(e.weight.is_finite() && e.weight > 0.0) {
            violations.push(Violation::BadWeight {
                edge: i,
                weight: e.weight,
            });
        }
    }
    let cached = h.edges.iter().map(HyperEdge::len).max().unwrap_or(0);
    debug_assert_eq!(cached, h.max_edge_size);
    if let Some(names) = &h.node_names {
        if names.len() != h.node_count {
            violations.push(Violation::NameCount {
                names: names.len(),
                nodes: h.node_count,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for name in names {
            if !seen.insert(name.as_str()) {
                violations.push(Violation::DuplicateName { name: name.clone() });
            }
        }
    }
    ValidationReport { violations }
}

/// A node coloring `Y`: one category in `1..=k` per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clustering(Vec<Category>);

impl Clustering {
    pub fn new(labels: Vec<Category>) -> Self {
        Clustering(labels)
    }

    /// Every node in category `c`.
    pub fn uniform(n: usize, c: Category) -> Self {
        Clustering(vec![c; n])
    }

    pub fn labels(&self) -> &[Category] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<Category> {
        self.0
    }

    pub fn get(&self, v: usize) -> Category {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that the clustering covers `h` and uses only its categories.
    pub fn check_for(&self, h: &LabeledHypergraph) -> Result<()> {
        if self.0.len() != h.node_count() {
            return Err(Error::LengthMismatch {
                left: self.0.len(),
                right: h.node_count(),
            });
        }
        if let Some(&bad) = self
            .0
            .iter()
            .find(|&&c| c == WILDCARD || c > h.category_count())
        {
            return Err(Error::BadParameter(format!(
                "clustering uses category {bad}, instance has {}",
                h.category_count()
            )));
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Clustering {
    type Output = Category;

    fn index(&self, v: usize) -> &Category {
        &self.0[v]
    }
}

/// Penalty of a single edge under `clustering`: its weight if it is a mistake, else 0.
pub fn mistake(edge: &HyperEdge, clustering: &Clustering) -> f64 {
    if edge.is_mistake(clustering) {
        edge.weight
    } else {
        0.0
    }
}

/// Total weight of mistaken edges.
pub fn objective(h: &LabeledHypergraph, clustering: &Clustering) -> f64 {
    h.edges.iter().map(|e| mistake(e, clustering)).sum()
}

/// Node-level mistakes: every node of `e` outside `ℓ(e)` costs `w_e`.
///
/// Wildcard edges contribute nothing; the linear objective has no notion of
/// an unlabeled edge.
pub fn linear_objective(h: &LabeledHypergraph, clustering: &Clustering) -> f64 {
    let labels = clustering.labels();
    h.edges
        .iter()
        .filter(|e| !e.is_wildcard())
        .map(|e| {
            let stray = e.nodes.iter().filter(|&&v| labels[v] != e.label).count();
            e.weight * stray as f64
        })
        .sum()
}

/// Collapses a hypergraph to a labeled graph: each co-occurring pair gets the
/// category holding a strict weighted majority of its co-occurrences. Tied
/// pairs are dropped. Emitted pair edges have unit weight, and inputs that are
/// already graphs come back unchanged.
pub fn reduce_to_labeled_graph(h: &LabeledHypergraph) -> LabeledHypergraph {
    if h.max_edge_size <= 2 {
        return h.clone();
    }
    let mut tallies: HashMap<(usize, usize), Vec<(Category, f64)>> = HashMap::new();
    for e in &h.edges {
        for (a, &i) in e.nodes.iter().enumerate() {
            for &j in &e.nodes[a + 1..] {
                let tally = tallies.entry((i, j)).or_default();
                match tally.iter_mut().find(|(c, _)| *c == e.label) {
                    Some((_, w)) => *w += e.weight,
                    None => tally.push((e.label, e.weight)),
                }
            }
        }
    }
    let mut pairs: Vec<_> = tallies.into_iter().collect();
    pairs.sort_unstable_by_key(|(pair, _)| *pair);
    let edges = pairs
        .into_iter()
        .filter_map(|((i, j), tally)| {
            let best = tally.iter().map(|&(_, w)| w).fold(f64::MIN, f64::max);
            let mut winners = tally.iter().filter(|&&(_, w)| w == best);
            let (c, _) = *winners.next()?;
            if winners.next().is_some() {
                return None;
            }
            Some(HyperEdge::unit(vec![i, j], c))
        })
        .collect();
    let mut g = LabeledHypergraph::new_unchecked(h.node_count, h.category_count, edges);
    g.node_names = h.node_names.clone();
    g
}
