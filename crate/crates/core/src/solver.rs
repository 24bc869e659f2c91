//! Uniform entry point over all clustering algorithms.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{chromatic_balls, lazy_chromatic_balls, majority_vote, merge_same_color};
use crate::error::{Error, Result};
use crate::hypergraph::{objective, reduce_to_labeled_graph, Clustering, LabeledHypergraph};
use crate::lp::{
    build_lp, lower_bound, round_deterministic, round_randomized, solve_lp_with, theorem_threshold,
    LpBackend,
};
use crate::metrics::edge_satisfaction;
use crate::multiway::cat_isocut;
use crate::report::{approx_ratio, SolveReport};
use crate::two_color::solve_two_color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Minimum cut, exact for two categories.
    Exact2,
    /// LP relaxation with threshold-1/2 rounding.
    LpRound,
    /// LP relaxation with randomized threshold rounding.
    LpRand,
    /// Isolating cuts on the multiway cut reduction.
    Isocut,
    /// Majority vote.
    Mv,
    /// Chromatic balls on the reduced graph.
    Cb,
    /// Lazy chromatic balls on the reduced graph.
    Lcb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Exact2,
        Algorithm::LpRound,
        Algorithm::LpRand,
        Algorithm::Isocut,
        Algorithm::Mv,
        Algorithm::Cb,
        Algorithm::Lcb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact2 => "exact2",
            Algorithm::LpRound => "lp-round",
            Algorithm::LpRand => "lp-rand",
            Algorithm::Isocut => "isocut",
            Algorithm::Mv => "mv",
            Algorithm::Cb => "cb",
            Algorithm::Lcb => "lcb",
        }
    }

    /// Whether the result depends on the seed.
    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::LpRand | Algorithm::Cb | Algorithm::Lcb)
    }

    fn solves_lp(self) -> bool {
        matches!(self, Algorithm::LpRound | Algorithm::LpRand)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                Error::BadParameter(format!(
                    "unknown algorithm `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Rounding threshold for `lp-rand`; defaults to the theorem's choice.
    pub threshold: Option<f64>,
    /// Also compute the LP lower bound for algorithms that do not need it.
    pub bound: bool,
    pub backend: LpBackend,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            threshold: None,
            bound: false,
            backend: LpBackend::Embedded,
        }
    }
}

/// Runs `algorithm` on `h`. The report's lower bound is the LP optimum
/// whenever the LP is solved; `exact2` reports its own optimum.
pub fn solve(
    h: &LabeledHypergraph,
    algorithm: Algorithm,
    options: &SolveOptions,
) -> Result<(Clustering, SolveReport)> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut bound = None;
    let y = match algorithm {
        Algorithm::Exact2 => {
            let (y, value) = solve_two_color(h)?;
            bound = Some(value);
            y
        }
        Algorithm::LpRound | Algorithm::LpRand => {
            let sol = solve_lp_with(&build_lp(h)?, &options.backend)?;
            bound = Some(lower_bound(&sol));
            if algorithm == Algorithm::LpRound {
                round_deterministic(&sol)
            } else {
                let t = options
                    .threshold
                    .unwrap_or_else(|| theorem_threshold(h.category_count(), h.max_edge_size()));
                round_randomized(&sol, t, &mut rng)?
            }
        }
        Algorithm::Isocut => cat_isocut(h)?,
        Algorithm::Mv => majority_vote(h),
        Algorithm::Cb => merge_same_color(&chromatic_balls(&reduce_to_labeled_graph(h), &mut rng)?),
        Algorithm::Lcb => {
            merge_same_color(&lazy_chromatic_balls(&reduce_to_labeled_graph(h), &mut rng)?)
        }
    };
    let wall_time_secs = started.elapsed().as_secs_f64();
    if options.bound && !algorithm.solves_lp() {
        let sol = solve_lp_with(&build_lp(h)?, &options.backend)?;
        bound = Some(lower_bound(&sol));
    }
    let value = objective(h, &y);
    let report = SolveReport {
        instance: None,
        algorithm: algorithm.name().to_owned(),
        objective: value,
        lower_bound: bound,
        approx_ratio: bound.and_then(|lb| approx_ratio(value, lb)),
        edge_satisfaction: edge_satisfaction(h, &y).ok(),
        seed: algorithm.is_randomized().then_some(options.seed),
        wall_time_secs,
        nodes: h.node_count(),
        edges: h.edge_count(),
        categories: h.category_count(),
    };
    Ok((y, report))
}
