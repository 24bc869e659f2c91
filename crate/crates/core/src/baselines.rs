//! Majority vote and the chromatic-balls family of greedy baselines.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Category, Clustering, LabeledHypergraph};

/// Each node takes the category carrying the most incident edge weight.
/// Ties go to the smaller id; nodes with no labeled edge get category 1.
///
/// This minimizes the linear objective exactly, since that objective
/// decomposes over nodes.
pub fn majority_vote(h: &LabeledHypergraph) -> Clustering {
    let labels = h
        .category_degrees()
        .iter()
        .map(|degrees| {
            let mut best = (1, 0.0);
            for (i, &d) in degrees.iter().enumerate() {
                if d > best.1 {
                    best = (i as Category + 1, d);
                }
            }
            best.0
        })
        .collect();
    Clustering::new(labels)
}

/// Disjoint monochromatic clusters over `0..node_count`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterFamily {
    node_count: usize,
    clusters: Vec<(Vec<usize>, Category)>,
}

impl ClusterFamily {
    pub fn new(node_count: usize) -> Self {
        ClusterFamily {
            node_count,
            clusters: Vec::new(),
        }
    }

    /// Appends a cluster. Panics if a member is out of range; disjointness is
    /// the caller's responsibility and is checked by [`ClusterFamily::is_partition`].
    pub fn push(&mut self, mut members: Vec<usize>, category: Category) {
        assert!(members.iter().all(|&v| v < self.node_count));
        members.sort_unstable();
        self.clusters.push((members, category));
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn clusters(&self) -> &[(Vec<usize>, Category)] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// True when every node lies in exactly one cluster.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.node_count];
        for (members, _) in &self.clusters {
            for &v in members {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Collapses the family to one cluster per category.
///
/// Nodes outside every cluster keep category 1; finalized families from the
/// baselines never have any.
pub fn merge_same_color(cf: &ClusterFamily) -> Clustering {
    let mut labels = vec![1; cf.node_count];
    for (members, c) in &cf.clusters {
        for &v in members {
            labels[v] = *c;
        }
    }
    Clustering::new(labels)
}

/// Grows balls around random pivot edges. A pivot `(u, v)` of category `c`
/// takes every unclustered `w` that has `c`-colored edges to both `u` and `v`.
pub fn chromatic_balls<R: Rng + ?Sized>(g: &LabeledHypergraph, rng: &mut R) -> Result<ClusterFamily> {
    balls(g, rng, Expansion::BothAnchors)
}

/// Like [`chromatic_balls`], but a ball keeps absorbing unclustered nodes
/// joined by a `c`-colored edge to any member until it is closed.
pub fn lazy_chromatic_balls<R: Rng + ?Sized>(
    g: &LabeledHypergraph,
    rng: &mut R,
) -> Result<ClusterFamily> {
    balls(g, rng, Expansion::Closure)
}

#[derive(Clone, Copy)]
enum Expansion {
    BothAnchors,
    Closure,
}

fn balls<R: Rng + ?Sized>(
    g: &LabeledHypergraph,
    rng: &mut R,
    expansion: Expansion,
) -> Result<ClusterFamily> {
    if let Some((edge, e)) = g.edges().iter().enumerate().find(|(_, e)| e.len() != 2) {
        return Err(Error::WrongArity {
            edge,
            size: e.len(),
            expected: 2,
        });
    }
    let n = g.node_count();
    // Colored adjacency, sorted so membership tests can binary search.
    let mut adj: Vec<Vec<(usize, Category)>> = vec![Vec::new(); n];
    for e in g.edges().iter().filter(|e| !e.is_wildcard()) {
        let (a, b) = (e.nodes()[0], e.nodes()[1]);
        adj[a].push((b, e.label()));
        adj[b].push((a, e.label()));
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let has = |a: usize, b: usize, c: Category| adj[a].binary_search(&(b, c)).is_ok();

    let mut clustered = vec![false; n];
    let mut family = ClusterFamily::new(n);
    let mut alive: Vec<usize> = (0..g.edge_count())
        .filter(|&i| !g.edges()[i].is_wildcard())
        .collect();
    while !alive.is_empty() {
        // Stale entries are dropped when drawn, so each draw is uniform over
        // the edges whose endpoints are both still unclustered.
        let slot = rng.random_range(0..alive.len());
        let e = &g.edges()[alive[slot]];
        let (u, v) = (e.nodes()[0], e.nodes()[1]);
        if clustered[u] || clustered[v] {
            alive.swap_remove(slot);
            continue;
        }
        let c = e.label();
        let mut members = vec![u, v];
        clustered[u] = true;
        clustered[v] = true;
        match expansion {
            Expansion::BothAnchors => {
                for &(w, cw) in &adj[u] {
                    if cw == c && !clustered[w] && has(v, w, c) {
                        clustered[w] = true;
                        members.push(w);
                    }
                }
            }
            Expansion::Closure => {
                let mut next = 0;
                while next < members.len() {
                    let x = members[next];
                    next += 1;
                    for &(w, cw) in &adj[x] {
                        if cw == c && !clustered[w] {
                            clustered[w] = true;
                            members.push(w);
                        }
                    }
                }
            }
        }
        family.push(members, c);
        alive.swap_remove(slot);
    }

    let fallback = majority_vote(g);
    for v in 0..n {
        if !clustered[v] {
            family.push(vec![v], fallback[v]);
        }
    }
    Ok(family)
}
