//! Import from the common two-file layout: one hyperedge per line in one
//! file, one integer label per line in another.

use super::NameTable;
use crate::error::{Error, Result};
use crate::hypergraph::{HyperEdge, LabeledHypergraph};

/// Builds an instance from parallel edge and label listings.
///
/// Edge lines list node ids separated by commas and/or whitespace. Repeated
/// ids within a line are merged, and edges left with fewer than two nodes are
/// dropped together with their label. Labels are non-negative integers (0 is
/// unlabeled); the category count is the largest label seen.
pub fn convert_parallel_files(edges: &str, labels: &str) -> Result<LabeledHypergraph> {
    let edge_lines: Vec<(usize, &str)> = edges
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let label_lines: Vec<(usize, &str)> = labels
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if edge_lines.len() != label_lines.len() {
        return Err(Error::LengthMismatch {
            left: edge_lines.len(),
            right: label_lines.len(),
        });
    }

    let mut names = NameTable::default();
    let mut out = Vec::with_capacity(edge_lines.len());
    let mut k = 0;
    for ((_, edge), &(number, label)) in edge_lines.into_iter().zip(&label_lines) {
        let label: u32 = label
            .trim()
            .parse()
            .map_err(|_| Error::parse(number + 1, format!("bad label `{}`", label.trim())))?;
        let mut nodes: Vec<usize> = edge
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|id| names.intern(id))
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.len() < 2 {
            continue;
        }
        k = k.max(label);
        out.push(HyperEdge::unit(nodes, label));
    }
    let n = names.len();
    if n == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    LabeledHypergraph::new(n, k.max(1), out)?.with_node_names(names.finish(n))
}
