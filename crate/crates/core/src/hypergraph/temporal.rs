/// One timestamped interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalEdge {
    pub time: f64,
    /// Sorted, distinct node indices.
    pub nodes: Vec<usize>,
}

/// Unlabeled timestamped edges over named nodes, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalEdges {
    pub node_names: Vec<String>,
    pub edges: Vec<TemporalEdge>,
}

impl TemporalEdges {
    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }
}
