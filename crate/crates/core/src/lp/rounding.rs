use rand::seq::SliceRandom;
use rand::Rng;

use super::LpSolution;
use crate::error::{Error, Result};
use crate::hypergraph::{Category, Clustering};

/// Margin below 1/2 a value must clear to count as "less than 1/2".
const HALF_MARGIN: f64 = 1e-9;

/// Threshold rounding at 1/2: a node joins the unique category with
/// `x_v^c < 1/2`, or its fallback category when there is none. Values within
/// 1e-9 of 1/2 count as undecided.
pub fn round_deterministic(sol: &LpSolution) -> Clustering {
    let labels = (0..sol.node_count())
        .map(|v| {
            let x = sol.node_values(v);
            let mut below = (0..x.len()).filter(|&c| x[c] < 0.5 - HALF_MARGIN);
            match below.next() {
                Some(c) => {
                    debug_assert!(below.next().is_none(), "two categories below 1/2");
                    c as Category + 1
                }
                None => sol.fallback(v),
            }
        })
        .collect();
    Clustering::new(labels)
}

/// Randomized threshold rounding. Categories are visited in a uniformly
/// random order, and each node joins the first category it reaches with
/// `x_v^c < t`. Nodes that reach none take their fallback category.
pub fn round_randomized<R: Rng + ?Sized>(
    sol: &LpSolution,
    t: f64,
    rng: &mut R,
) -> Result<Clustering> {
    if !(0.5..=2.0 / 3.0 + 1e-12).contains(&t) {
        return Err(Error::BadThreshold(t));
    }
    let k = sol.category_count() as usize;
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let labels = (0..sol.node_count())
        .map(|v| {
            let x = sol.node_values(v);
            order
                .iter()
                .find(|&&c| x[c] < t)
                .map_or_else(|| sol.fallback(v), |&c| c as Category + 1)
        })
        .collect();
    Ok(Clustering::new(labels))
}

/// The rounding threshold giving the better of the two expected
/// approximation guarantees, `2 - 1/k` or `2 - 1/(r+1)`.
pub fn theorem_threshold(k: u32, r: usize) -> f64 {
    let k = k.max(2) as f64;
    let r = r.max(2) as f64;
    if k <= r + 1.0 {
        k / (2.0 * k - 1.0)
    } else {
        (r + 1.0) / (2.0 * r + 1.0)
    }
}
