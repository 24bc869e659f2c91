use serde::{Deserialize, Serialize};

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(default)]
    pub instance: Option<String>,
    pub algorithm: String,
    pub objective: f64,
    pub lower_bound: Option<f64>,
    pub approx_ratio: Option<f64>,
    /// `None` for instances without edges.
    pub edge_satisfaction: Option<f64>,
    pub seed: Option<u64>,
    pub wall_time_secs: f64,
    pub nodes: usize,
    pub edges: usize,
    pub categories: u32,
}

/// `objective / lower_bound`, defined as 1 when both are zero and missing
/// when only the bound is zero.
pub fn approx_ratio(objective: f64, lower_bound: f64) -> Option<f64> {
    const ZERO: f64 = 1e-12;
    if lower_bound > ZERO {
        Some(objective / lower_bound)
    } else if objective <= ZERO {
        Some(1.0)
    } else {
        None
    }
}
