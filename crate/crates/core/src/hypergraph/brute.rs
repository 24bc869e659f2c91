use super::{Category, Clustering, LabeledHypergraph};
use crate::error::{Error, Result};

/// Largest `k^n` that [`brute_force_optimum`] agrees to search.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// Exact minimizer of the objective by exhaustive search over all `k^n`
/// colorings. Among optimal colorings the lexicographically smallest is
/// returned.
///
/// The search is a depth-first walk in lexicographic order that skips
/// subtrees whose committed mistakes already reach the best value found.
/// Skipped leaves are never strictly better and never lexicographically
/// earlier than the incumbent, so the tie-break is unaffected.
pub fn brute_force_optimum(h: &LabeledHypergraph) -> Result<(Clustering, f64)> {
    let n = h.node_count();
    let k = h.category_count();
    let candidates = (k as f64).powi(n as i32);
    if candidates > BRUTE_FORCE_LIMIT as f64 {
        return Err(Error::InstanceTooLarge {
            candidates,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut search = Search {
        h,
        k,
        incidence: h.incidence(),
        labels: vec![0; n],
        broken: vec![false; h.edge_count()],
        cost: 0.0,
        best: f64::INFINITY,
        best_labels: vec![1; n],
    };
    search.descend(0);
    Ok((Clustering::new(search.best_labels), search.best))
}

struct Search<'a> {
    h: &'a LabeledHypergraph,
    k: Category,
    incidence: Vec<Vec<usize>>,
    labels: Vec<Category>,
    broken: Vec<bool>,
    cost: f64,
    best: f64,
    best_labels: Vec<Category>,
}

impl Search<'_> {
    fn descend(&mut self, v: usize) {
        if v == self.labels.len() {
            if self.cost < self.best {
                self.best = self.cost;
                self.best_labels.copy_from_slice(&self.labels);
            }
            return;
        }
        for c in 1..=self.k {
            self.labels[v] = c;
            let mut newly_broken = Vec::new();
            for &ei in &self.incidence[v] {
                if self.broken[ei] {
                    continue;
                }
                let e = &self.h.edges()[ei];
                // Nodes are assigned in increasing order, so `nodes[0]` is
                // already colored whenever `v` is a later node of the edge.
                let breaks = if e.is_wildcard() {
                    c != self.labels[e.nodes()[0]]
                } else {
                    c != e.label()
                };
                if breaks {
                    self.broken[ei] = true;
                    self.cost += e.weight();
                    newly_broken.push(ei);
                }
            }
            if self.cost < self.best {
                self.descend(v + 1);
            }
            for ei in newly_broken {
                self.broken[ei] = false;
                self.cost -= self.h.edges()[ei].weight();
            }
        }
        self.labels[v] = 0;
    }
}
