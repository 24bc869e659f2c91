//! Random instances with planted clusters, label noise, and time binning.

use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Category, HyperEdge, LabeledHypergraph, TemporalEdges};

/// Default cap on the number of candidate tuples enumerated one by one.
pub const DEFAULT_TUPLE_BUDGET: u64 = 100_000_000;

/// Parameters of the planted chromatic model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChromaticParams {
    /// Number of nodes.
    pub n: usize,
    /// Upper bound on the number of colors `L`.
    pub colors: usize,
    /// Upper bound on the number of clusters `K`.
    pub clusters: usize,
    /// Probability of an edge (or tuple) inside a cluster.
    pub p: f64,
    /// Probability of an edge (or tuple) across clusters.
    pub q: f64,
    /// Probability that an inside edge gets a uniformly redrawn color.
    pub w: f64,
    /// Edge size.
    pub r: usize,
    /// Tuples beyond this count are sampled instead of enumerated.
    pub tuple_budget: u64,
}

impl ChromaticParams {
    /// Graph parameters (`r = 2`).
    pub fn graph(n: usize, colors: usize, clusters: usize, p: f64, q: f64, w: f64) -> Self {
        ChromaticParams {
            n,
            colors,
            clusters,
            p,
            q,
            w,
            r: 2,
            tuple_budget: DEFAULT_TUPLE_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParameter(msg));
        for (name, x) in [("p", self.p), ("q", self.q), ("w", self.w)] {
            if !(0.0..=1.0).contains(&x) {
                return bad(format!("{name} = {x} outside [0, 1]"));
            }
        }
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if !(1..=self.n).contains(&self.colors) {
            return bad(format!("L = {} outside 1..={}", self.colors, self.n));
        }
        if !(1..=self.n).contains(&self.clusters) {
            return bad(format!("K = {} outside 1..={}", self.clusters, self.n));
        }
        if self.r < 2 || self.r > self.n {
            return bad(format!("r = {} outside 2..={}", self.r, self.n));
        }
        Ok(())
    }
}

/// The planted structure behind a generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Cluster id (`0..K`) per node.
    pub cluster: Vec<usize>,
    /// Color (`1..=L`, in model numbering) per cluster id.
    pub cluster_color: Vec<u32>,
    /// Model color → instance category, 0 for colors that do not occur.
    /// Index 0 is unused.
    pub category_of_color: Vec<Category>,
}

impl GroundTruth {
    /// True category of every node in the instance's numbering.
    pub fn node_labels(&self) -> Vec<Category> {
        self.cluster
            .iter()
            .map(|&c| self.category_of_color[self.cluster_color[c] as usize])
            .collect()
    }

    /// Number of clusters that received at least one node.
    pub fn effective_clusters(&self) -> usize {
        self.cluster.iter().collect::<HashSet<_>>().len()
    }

    /// Number of distinct true colors among nodes.
    pub fn effective_colors(&self) -> usize {
        self.cluster
            .iter()
            .map(|&c| self.cluster_color[c])
            .collect::<HashSet<_>>()
            .len()
    }
}

/// Renumbers model colors densely, keeping every color that appears on an
/// edge or as some node's true color, in increasing model order.
fn reindex(
    n: usize,
    colors: usize,
    cluster: Vec<usize>,
    cluster_color: Vec<u32>,
    raw: Vec<(Vec<usize>, u32)>,
) -> Result<(LabeledHypergraph, GroundTruth)> {
    let mut used = vec![false; colors + 1];
    for &c in &cluster {
        used[cluster_color[c] as usize] = true;
    }
    for (_, color) in &raw {
        used[*color as usize] = true;
    }
    let mut category_of_color = vec![0; colors + 1];
    let mut k = 0;
    for (color, &u) in used.iter().enumerate() {
        if u {
            k += 1;
            category_of_color[color] = k;
        }
    }
    let mut edges: Vec<HyperEdge> = raw
        .into_iter()
        .map(|(nodes, color)| HyperEdge::unit(nodes, category_of_color[color as usize]))
        .collect();
    edges.sort_by(|a, b| a.nodes().cmp(b.nodes()));
    let h = LabeledHypergraph::new(n, k, edges)?;
    Ok((
        h,
        GroundTruth {
            cluster,
            cluster_color,
            category_of_color,
        },
    ))
}

fn edge_color<R: Rng + ?Sized>(rng: &mut R, true_color: u32, w: f64, colors: usize) -> u32 {
    if rng.random_bool(w) {
        rng.random_range(1..=colors as u32)
    } else {
        true_color
    }
}

/// Planted chromatic graph: nodes fall into `K` clusters uniformly, each
/// cluster picks one of `L` colors uniformly, pairs inside a cluster become
/// edges with probability `p` and pairs across clusters with probability `q`.
/// Inside edges carry the cluster color except that with probability `w` the
/// color is redrawn uniformly (possibly landing on the true color again);
/// across edges get a uniform color.
pub fn gen_chromatic_graph<R: Rng + ?Sized>(
    params: &ChromaticParams,
    rng: &mut R,
) -> Result<(LabeledHypergraph, GroundTruth)> {
    params.validate()?;
    if params.r != 2 {
        return Err(Error::BadParameter(format!(
            "the graph model needs r = 2, got {}",
            params.r
        )));
    }
    let n = params.n;
    let cluster: Vec<usize> = (0..n).map(|_| rng.random_range(0..params.clusters)).collect();
    let cluster_color: Vec<u32> = (0..params.clusters)
        .map(|_| rng.random_range(1..=params.colors as u32))
        .collect();
    let mut raw = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if cluster[i] == cluster[j] {
                if rng.random_bool(params.p) {
                    let color = edge_color(rng, cluster_color[cluster[i]], params.w, params.colors);
                    raw.push((vec![i, j], color));
                }
            } else if rng.random_bool(params.q) {
                raw.push((vec![i, j], rng.random_range(1..=params.colors as u32)));
            }
        }
    }
    reindex(n, params.colors, cluster, cluster_color, raw)
}

fn binomial_coefficient(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `visit` on every increasing `r`-subset of `0..n`, in lex order.
fn for_each_subset(n: usize, r: usize, mut visit: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        // rightmost position that can still advance
        let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Planted chromatic hypergraph with `K = L`: cluster `i` has color `i + 1`.
/// Every `r`-tuple inside a cluster becomes an edge with probability `p`,
/// every tuple spanning two or more clusters with probability `q`; colors
/// follow the graph model.
///
/// Tuple classes larger than `tuple_budget` are not enumerated: for spanning
/// tuples the edge count is drawn from the binomial distribution and distinct
/// spanning tuples are sampled by rejection. An inside class that large is an
/// error.
pub fn gen_chromatic_hypergraph<R: Rng + ?Sized>(
    params: &ChromaticParams,
    rng: &mut R,
) -> Result<(LabeledHypergraph, GroundTruth)> {
    params.validate()?;
    if params.colors != params.clusters {
        return Err(Error::BadParameter(format!(
            "the hypergraph model needs K = L, got K = {} and L = {}",
            params.clusters, params.colors
        )));
    }
    let (n, r) = (params.n, params.r);
    let cluster: Vec<usize> = (0..n).map(|_| rng.random_range(0..params.clusters)).collect();
    let cluster_color: Vec<u32> = (1..=params.clusters as u32).collect();
    let mut members = vec![Vec::new(); params.clusters];
    for (v, &c) in cluster.iter().enumerate() {
        members[c].push(v);
    }

    let inside: f64 = members.iter().map(|m| binomial_coefficient(m.len(), r)).sum();
    if inside > params.tuple_budget as f64 {
        return Err(Error::TooManyTuples {
            candidates: inside,
            budget: params.tuple_budget,
        });
    }
    let mut raw = Vec::new();
    for (c, m) in members.iter().enumerate() {
        for_each_subset(m.len(), r, |idx| {
            if rng.random_bool(params.p) {
                let color = edge_color(rng, cluster_color[c], params.w, params.colors);
                raw.push((idx.iter().map(|&i| m[i]).collect(), color));
            }
        });
    }

    let spanning = binomial_coefficient(n, r) - inside;
    let spans = |t: &[usize]| t.iter().any(|&v| cluster[v] != cluster[t[0]]);
    if spanning <= params.tuple_budget as f64 {
        for_each_subset(n, r, |t| {
            if spans(t) && rng.random_bool(params.q) {
                raw.push((t.to_vec(), rng.random_range(1..=params.colors as u32)));
            }
        });
    } else {
        let count = Binomial::new(spanning.round() as u64, params.q)
            .map_err(|e| Error::BadParameter(e.to_string()))?
            .sample(rng);
        if count > params.tuple_budget || count as f64 * 2.0 > spanning {
            return Err(Error::TooManyTuples {
                candidates: count as f64,
                budget: params.tuple_budget,
            });
        }
        let mut chosen: HashSet<Vec<usize>> = HashSet::with_capacity(count as usize);
        while (chosen.len() as u64) < count {
            let mut t = rand::seq::index::sample(rng, n, r).into_vec();
            t.sort_unstable();
            if spans(&t) && !chosen.contains(&t) {
                chosen.insert(t.clone());
                raw.push((t, rng.random_range(1..=params.colors as u32)));
            }
        }
    }
    reindex(n, params.colors, cluster, cluster_color, raw)
}

/// Relabels a graph from node ground truth: an edge whose nodes share a true
/// label keeps it with probability `1 - w` and is otherwise relabeled
/// uniformly from all categories; any other edge gets a uniform label.
pub fn inject_label_noise<R: Rng + ?Sized>(
    g: &LabeledHypergraph,
    truth: &[Category],
    w: f64,
    rng: &mut R,
) -> Result<LabeledHypergraph> {
    if truth.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            left: truth.len(),
            right: g.node_count(),
        });
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::BadParameter(format!("w = {w} outside [0, 1]")));
    }
    let k = g.category_count();
    if let Some(&bad) = truth.iter().find(|&&c| c == 0 || c > k) {
        return Err(Error::BadParameter(format!(
            "true label {bad} outside 1..={k}"
        )));
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let first = truth[e.nodes()[0]];
            let inside = e.nodes().iter().all(|&v| truth[v] == first);
            let label = if inside && !rng.random_bool(w) {
                first
            } else {
                rng.random_range(1..=k)
            };
            HyperEdge::new(e.nodes().to_vec(), label, e.weight())
        })
        .collect();
    let h = LabeledHypergraph::new(g.node_count(), k, edges)?;
    match g.node_names() {
        Some(names) => h.with_node_names(names.to_vec()),
        None => Ok(h),
    }
}

/// Labels timestamped edges by time window: edges are stably sorted by
/// time and cut into `k` contiguous bins whose sizes differ by at most one,
/// earlier bins taking the remainder. Bin `i` becomes category `i`.
pub fn bin_timestamps(t: &TemporalEdges, k: usize) -> Result<LabeledHypergraph> {
    if k < 2 {
        return Err(Error::BadParameter(format!("need at least 2 bins, got {k}")));
    }
    let m = t.edges.len();
    if m < k {
        return Err(Error::FewerEdgesThanBins { edges: m, bins: k });
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| t.edges[a].time.total_cmp(&t.edges[b].time));
    let (base, extra) = (m / k, m % k);
    let mut edges = Vec::with_capacity(m);
    let mut next = 0;
    for bin in 0..k {
        let size = base + usize::from(bin < extra);
        for &i in &order[next..next + size] {
            edges.push(HyperEdge::unit(t.edges[i].nodes.clone(), bin as Category + 1));
        }
        next += size;
    }
    LabeledHypergraph::new(t.node_count(), k as u32, edges)?.with_node_names(t.node_names.clone())
}
