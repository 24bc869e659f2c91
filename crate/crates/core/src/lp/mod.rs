//! Linear programming relaxation of the clustering ILP.
//!
//! Variables are `x_v^c` ("node `v` is *not* in category `c`") followed by
//! `x_e` ("edge `e` is a mistake"), all in `[0, 1]`. Node variables are
//! stored node-major, so `x_v^c` has index `v * k + (c - 1)` and `x_e` has
//! index `n * k + e`.

mod rounding;
mod text;

use std::path::PathBuf;

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::baselines::majority_vote;
use crate::error::{Error, Result};
use crate::hypergraph::{Category, LabeledHypergraph};

pub use rounding::{round_deterministic, round_randomized, theorem_threshold};
pub use text::{parse_lp_values, write_lp_text};

/// Values within this distance of 0 or 1 are snapped onto the bound.
const SNAP: f64 = 1e-9;
/// Tolerance for the integrality flag and feasibility residuals.
pub const LP_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

/// One sparse row `Σ coeff · x  (= | ≤)  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl LpRow {
    fn residual(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self.terms.iter().map(|&(i, a)| a * x[i]).sum();
        match self.relation {
            Relation::Eq => (lhs - self.rhs).abs(),
            Relation::Le => (lhs - self.rhs).max(0.0),
        }
    }
}

/// The relaxation of one instance, ready to hand to a solver.
#[derive(Debug, Clone)]
pub struct LpInstance {
    node_count: usize,
    category_count: u32,
    cost: Vec<f64>,
    rows: Vec<LpRow>,
    fallback: Vec<Category>,
}

impl LpInstance {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn category_count(&self) -> u32 {
        self.category_count
    }

    pub fn variable_count(&self) -> usize {
        self.cost.len()
    }

    /// Objective coefficients, zero on node variables.
    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    pub fn node_var(&self, v: usize, c: Category) -> usize {
        v * self.category_count as usize + (c as usize - 1)
    }

    pub fn edge_var(&self, e: usize) -> usize {
        self.node_count * self.category_count as usize + e
    }

    /// Solver-facing name of variable `i`: `x<v>_<c>` or `e<index>`.
    pub fn var_name(&self, i: usize) -> String {
        let k = self.category_count as usize;
        if i < self.node_count * k {
            format!("x{}_{}", i / k, i % k + 1)
        } else {
            format!("e{}", i - self.node_count * k)
        }
    }

    /// Largest constraint violation of `x`, ignoring variable bounds.
    pub fn max_residual(&self, x: &[f64]) -> f64 {
        self.rows.iter().map(|r| r.residual(x)).fold(0.0, f64::max)
    }

    /// Checks and cleans a raw solver assignment: values are clamped to
    /// `[0, 1]` and snapped onto bounds within 1e-9, constraints must then
    /// hold to 1e-7, and the objective is recomputed from the values.
    pub fn accept(&self, mut values: Vec<f64>) -> Result<LpSolution> {
        if values.len() != self.variable_count() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: self.variable_count(),
            });
        }
        for x in &mut values {
            if !x.is_finite() || *x < -LP_TOLERANCE || *x > 1.0 + LP_TOLERANCE {
                return Err(Error::Solver(format!("value {x} outside [0, 1]")));
            }
            *x = x.clamp(0.0, 1.0);
            if *x < SNAP {
                *x = 0.0;
            } else if *x > 1.0 - SNAP {
                *x = 1.0;
            }
        }
        let residual = self.max_residual(&values);
        if residual > LP_TOLERANCE {
            return Err(Error::Solver(format!(
                "solution violates a constraint by {residual:e}"
            )));
        }
        let integral = values
            .iter()
            .all(|&x| x.min(1.0 - x) <= LP_TOLERANCE);
        let objective = self.cost.iter().zip(&values).map(|(c, x)| c * x).sum();
        Ok(LpSolution {
            node_count: self.node_count,
            category_count: self.category_count,
            values,
            objective,
            integral,
            fallback: self.fallback.clone(),
        })
    }
}

/// An optimal assignment of the relaxation.
#[derive(Debug, Clone)]
pub struct LpSolution {
    node_count: usize,
    category_count: u32,
    values: Vec<f64>,
    objective: f64,
    integral: bool,
    fallback: Vec<Category>,
}

impl LpSolution {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// All variables within 1e-7 of 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn category_count(&self) -> u32 {
        self.category_count
    }

    /// `x_v^c`, the extent to which `v` is kept out of category `c`.
    pub fn node_value(&self, v: usize, c: Category) -> f64 {
        self.values[v * self.category_count as usize + (c as usize - 1)]
    }

    /// The `k` node variables of `v`, indexed by `c - 1`.
    pub fn node_values(&self, v: usize) -> &[f64] {
        let k = self.category_count as usize;
        &self.values[v * k..(v + 1) * k]
    }

    pub fn edge_value(&self, e: usize) -> f64 {
        self.values[self.node_count * self.category_count as usize + e]
    }

    /// Category used by rounding for nodes the LP leaves undecided: the
    /// node's majority-vote category.
    pub fn fallback(&self, v: usize) -> Category {
        self.fallback[v]
    }
}

/// Builds the relaxation of `h`.
///
/// Labeled edges get one cover row `x_v^c - x_e ≤ 0` per member. With two
/// categories an unlabeled edge `e` is also accepted: its rows
/// `±(x_v^1 - x_u^1) - x_e ≤ 0` tie every member `v` to the first member `u`,
/// which is exact on integral points. Unlabeled edges are rejected for
/// `k > 2`.
pub fn build_lp(h: &LabeledHypergraph) -> Result<LpInstance> {
    let n = h.node_count();
    let k = h.category_count();
    if k < 2 {
        return Err(Error::WrongCategoryCount {
            expected: 2,
            found: k,
        });
    }
    if k > 2 {
        if let Some(edge) = h.edges().iter().position(|e| e.is_wildcard()) {
            return Err(Error::WildcardUnsupported { edge });
        }
    }
    let ku = k as usize;
    let mut cost = vec![0.0; n * ku];
    cost.extend(h.edges().iter().map(|e| e.weight()));
    let mut rows = Vec::with_capacity(n + h.edges().iter().map(|e| e.len()).sum::<usize>());
    for v in 0..n {
        rows.push(LpRow {
            terms: (0..ku).map(|c| (v * ku + c, 1.0)).collect(),
            relation: Relation::Eq,
            rhs: (k - 1) as f64,
        });
    }
    for (i, e) in h.edges().iter().enumerate() {
        let xe = n * ku + i;
        if e.is_wildcard() {
            let anchor = e.nodes()[0] * ku;
            for &v in &e.nodes()[1..] {
                for sign in [1.0, -1.0] {
                    rows.push(LpRow {
                        terms: vec![(v * ku, sign), (anchor, -sign), (xe, -1.0)],
                        relation: Relation::Le,
                        rhs: 0.0,
                    });
                }
            }
            continue;
        }
        let c = e.label() as usize - 1;
        for &v in e.nodes() {
            rows.push(LpRow {
                terms: vec![(v * ku + c, 1.0), (xe, -1.0)],
                relation: Relation::Le,
                rhs: 0.0,
            });
        }
    }
    Ok(LpInstance {
        node_count: n,
        category_count: k,
        cost,
        rows,
        fallback: majority_vote(h).into_labels(),
    })
}

/// Where relaxations get solved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LpBackend {
    /// The bundled simplex solver.
    #[default]
    Embedded,
    /// An executable invoked as `<path> <lp-file> <solution-file>`. It must
    /// read the LP text format and write `name value` lines.
    External(PathBuf),
}

impl LpBackend {
    /// Reads `CATEC_LP_SOLVER` (`embedded` or `external:<path>`); unset
    /// means embedded.
    pub fn from_env() -> Result<Self> {
        match std::env::var("CATEC_LP_SOLVER") {
            Ok(s) => s.parse(),
            Err(_) => Ok(LpBackend::Embedded),
        }
    }
}

impl std::str::FromStr for LpBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "embedded" {
            Ok(LpBackend::Embedded)
        } else if let Some(path) = s.strip_prefix("external:") {
            if path.is_empty() {
                return Err(Error::BadParameter("external LP solver needs a path".into()));
            }
            Ok(LpBackend::External(PathBuf::from(path)))
        } else {
            Err(Error::BadParameter(format!(
                "LP solver `{s}`: expected `embedded` or `external:<path>`"
            )))
        }
    }
}

/// Solves the relaxation with the embedded solver.
pub fn solve_lp(lp: &LpInstance) -> Result<LpSolution> {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = lp.cost.iter().map(|&c| problem.add_var(c, (0.0, 1.0))).collect();
    for row in &lp.rows {
        let terms: Vec<_> = row.terms.iter().map(|&(i, a)| (vars[i], a)).collect();
        let op = match row.relation {
            Relation::Eq => ComparisonOp::Eq,
            Relation::Le => ComparisonOp::Le,
        };
        problem.add_constraint(terms.as_slice(), op, row.rhs);
    }
    let solution = problem.solve().map_err(|e| match e {
        microlp::Error::Infeasible => Error::Infeasible,
        other => Error::Solver(other.to_string()),
    })?;
    lp.accept(vars.iter().map(|&v| solution[v]).collect())
}

/// Solves the relaxation with the chosen backend.
pub fn solve_lp_with(lp: &LpInstance, backend: &LpBackend) -> Result<LpSolution> {
    match backend {
        LpBackend::Embedded => solve_lp(lp),
        LpBackend::External(path) => text::solve_external(lp, path),
    }
}

/// The LP optimum, a lower bound on the optimal clustering objective.
pub fn lower_bound(sol: &LpSolution) -> f64 {
    sol.objective
}
