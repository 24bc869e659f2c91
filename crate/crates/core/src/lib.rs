//! Categorical edge clustering.
//!
//! Given a hypergraph whose edges carry categories, assign every node one
//! category so that the total weight of edges not fully inside their own
//! category is minimal. Two categories are solved exactly by minimum cut;
//! for more, the crate offers LP rounding, isolating cuts on a multiway cut
//! reduction, and greedy baselines, plus generators, metrics and file formats
//! around them.
//!
//! ```
//! use catec_core::{HyperEdge, LabeledHypergraph, solve, Algorithm, SolveOptions};
//!
//! let h = LabeledHypergraph::new(
//!     3,
//!     2,
//!     vec![
//!         HyperEdge::unit(vec![0, 1], 1),
//!         HyperEdge::unit(vec![1, 2], 2),
//!         HyperEdge::unit(vec![0, 2], 1),
//!     ],
//! )?;
//! let (y, report) = solve(&h, Algorithm::Exact2, &SolveOptions::default())?;
//! assert_eq!(report.objective, 1.0);
//! assert_eq!(y.labels(), &[1, 1, 1]);
//! # Ok::<(), catec_core::Error>(())
//! ```

pub mod baselines;
pub mod error;
pub mod flow;
pub mod hypergraph;
pub mod io;
pub mod lp;
pub mod metrics;
pub mod multiway;
pub mod report;
pub mod solver;
pub mod synthetic;
pub mod two_color;

pub use error::{Error, Result};
pub use hypergraph::{
    brute_force_optimum, linear_objective, objective, validate, Category, Clustering, HyperEdge,
    LabeledHypergraph, TemporalEdge, TemporalEdges, WILDCARD,
};
pub use report::SolveReport;
pub use solver::{solve, Algorithm, SolveOptions};
