//! Maximum flow / minimum s-t cut.
//!
//! [`min_cut`] runs highest-label push-relabel with the gap heuristic and
//! periodic global relabeling. When every capacity is a rational with a
//! small common denominator (true for all the clustering reductions), the
//! solve is carried out in scaled `i64` arithmetic and is exact; otherwise it
//! falls back to `f64` with a relative tolerance.
//!
//! The reported source side is the set of nodes reachable from the source in
//! the final residual graph. That set is the unique inclusion-minimal minimum
//! cut, so it does not depend on which maximum flow was found.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: f64,
}

/// Directed capacitated network with a designated source and sink. Parallel
/// arcs are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowNetwork {
    node_count: usize,
    arcs: Vec<FlowArc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: f64) {
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
        });
    }

    /// An undirected edge, as two opposite arcs of the same capacity.
    pub fn add_edge(&mut self, a: usize, b: usize, capacity: f64) {
        self.add_arc(a, b, capacity);
        self.add_arc(b, a, capacity);
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        if self.source >= n || self.sink >= n {
            return Err(Error::InvalidNetwork(format!(
                "terminals ({}, {}) outside {n} nodes",
                self.source, self.sink
            )));
        }
        if self.source == self.sink {
            return Err(Error::InvalidNetwork("source equals sink".into()));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= n || a.head >= n {
                return Err(Error::InvalidNetwork(format!(
                    "arc {i} ({} -> {}) outside {n} nodes",
                    a.tail, a.head
                )));
            }
            if !(a.capacity.is_finite() && a.capacity >= 0.0) {
                return Err(Error::InvalidNetwork(format!(
                    "arc {i} has capacity {}",
                    a.capacity
                )));
            }
        }
        Ok(())
    }

    /// Total capacity of arcs leaving `source_side`.
    pub fn cut_value(&self, source_side: &[bool]) -> f64 {
        self.arcs
            .iter()
            .filter(|a| source_side[a.tail] && !source_side[a.head])
            .map(|a| a.capacity)
            .sum()
    }

    /// DIMACS max-flow text, for cross-checking with external solvers.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c catec flow network");
        let _ = writeln!(out, "p max {} {}", self.node_count, self.arcs.len());
        let _ = writeln!(out, "n {} s", self.source + 1);
        let _ = writeln!(out, "n {} t", self.sink + 1);
        for a in &self.arcs {
            let _ = writeln!(out, "a {} {} {}", a.tail + 1, a.head + 1, a.capacity);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinCut {
    pub value: f64,
    /// Membership of each node in the minimal source side.
    pub source_side: Vec<bool>,
    /// Flow on each arc, in insertion order.
    pub flow: Vec<f64>,
    /// Whether the solve ran in exact scaled-integer arithmetic.
    pub exact: bool,
}

impl MinCut {
    pub fn source_nodes(&self) -> Vec<usize> {
        (0..self.source_side.len())
            .filter(|&v| self.source_side[v])
            .collect()
    }
}

/// Solves max-flow on `net` and returns the minimum cut with the minimal source side.
pub fn min_cut(net: &FlowNetwork) -> Result<MinCut> {
    net.validate()?;
    if let Some(scale) = common_denominator(net) {
        let caps: Vec<i64> = net
            .arcs
            .iter()
            .map(|a| (a.capacity * scale as f64).round() as i64)
            .collect();
        let mut pr = PushRelabel::new(net, &caps, 0i64);
        pr.run();
        let denom = scale as f64;
        Ok(MinCut {
            value: pr.excess[net.sink] as f64 / denom,
            source_side: pr.residual_reachable(),
            flow: pr.arc_flows().into_iter().map(|f| f as f64 / denom).collect(),
            exact: true,
        })
    } else {
        let caps: Vec<f64> = net.arcs.iter().map(|a| a.capacity).collect();
        let largest = caps.iter().cloned().fold(0.0, f64::max);
        let mut pr = PushRelabel::new(net, &caps, largest * 1e-12);
        pr.run();
        Ok(MinCut {
            value: pr.excess[net.sink],
            source_side: pr.residual_reachable(),
            flow: pr.arc_flows(),
            exact: false,
        })
    }
}

const MAX_DENOMINATOR: u64 = 100_000;
const MAX_SCALE: u64 = 1 << 40;

/// Smallest `D` such that every capacity times `D` is (numerically) an
/// integer, if one exists that keeps the scaled total inside `i64`.
fn common_denominator(net: &FlowNetwork) -> Option<u64> {
    let mut caps: Vec<f64> = net.arcs.iter().map(|a| a.capacity).collect();
    caps.sort_by(f64::total_cmp);
    caps.dedup();
    let mut scale: u64 = 1;
    for &c in &caps {
        let d = rational_denominator(c)?;
        scale = lcm(scale, d);
        if scale > MAX_SCALE {
            return None;
        }
    }
    let total: f64 = net.arcs.iter().map(|a| a.capacity).sum();
    if total * scale as f64 >= (1u64 << 61) as f64 {
        return None;
    }
    let s = scale as f64;
    let exact = caps
        .iter()
        .all(|&c| (c * s - (c * s).round()).abs() <= 1e-9 * (c * s).abs().max(1.0));
    exact.then_some(scale)
}

/// Denominator of the first continued-fraction convergent matching `x` to
/// within float noise.
fn rational_denominator(x: f64) -> Option<u64> {
    let tol = 1e-13 * x.abs().max(1.0);
    let (mut h_prev, mut h) = (1.0f64, x.floor());
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if (x - h / k as f64).abs() <= tol {
            return Some(k);
        }
        if frac == 0.0 {
            return None;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let h_next = a * h + h_prev;
        let k_next = (a as u64).checked_mul(k)?.checked_add(k_prev)?;
        if k_next > MAX_DENOMINATOR {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

trait Capacity:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + AddAssign + SubAssign
{
    const ZERO: Self;
    fn min_of(self, other: Self) -> Self {
        if self < other {
            self
        } else {
            other
        }
    }
}

impl Capacity for i64 {
    const ZERO: Self = 0;
}

impl Capacity for f64 {
    const ZERO: Self = 0.0;
}

/// Residual arcs are stored in pairs: arc `2i` is the forward copy of input
/// arc `i`, `2i + 1` its reverse.
struct PushRelabel<T> {
    n: usize,
    source: usize,
    sink: usize,
    head: Vec<usize>,
    residual: Vec<T>,
    original: Vec<T>,
    adjacency: Vec<Vec<usize>>,
    /// Residual amounts at or below this are treated as zero.
    threshold: T,
    excess: Vec<T>,
    height: Vec<usize>,
    current: Vec<usize>,
    /// Active nodes per height, `0..2n`.
    active: Vec<Vec<usize>>,
    /// All nodes per height below `n`, for the gap heuristic.
    level: Vec<Vec<usize>>,
    level_pos: Vec<usize>,
    highest_active: usize,
    work_since_relabel: usize,
}

impl<T: Capacity> PushRelabel<T> {
    fn new(net: &FlowNetwork, caps: &[T], threshold: T) -> Self {
        let n = net.node_count;
        let m = net.arcs.len();
        let mut head = Vec::with_capacity(2 * m);
        let mut residual = Vec::with_capacity(2 * m);
        let mut adjacency = vec![Vec::new(); n];
        for (i, a) in net.arcs.iter().enumerate() {
            head.push(a.head);
            residual.push(caps[i]);
            head.push(a.tail);
            residual.push(T::ZERO);
            adjacency[a.tail].push(2 * i);
            adjacency[a.head].push(2 * i + 1);
        }
        PushRelabel {
            n,
            source: net.source,
            sink: net.sink,
            head,
            original: residual.clone(),
            residual,
            adjacency,
            threshold,
            excess: vec![T::ZERO; n],
            height: vec![0; n],
            current: vec![0; n],
            active: vec![Vec::new(); 2 * n + 1],
            level: vec![Vec::new(); n + 1],
            level_pos: vec![usize::MAX; n],
            highest_active: 0,
            work_since_relabel: 0,
        }
    }

    fn run(&mut self) {
        let s = self.source;
        for idx in 0..self.adjacency[s].len() {
            let a = self.adjacency[s][idx];
            let amount = self.residual[a];
            if amount > self.threshold {
                let w = self.head[a];
                self.residual[a] -= amount;
                self.residual[a ^ 1] += amount;
                self.excess[w] += amount;
                self.excess[s] -= amount;
            }
        }
        self.global_relabel();
        let relabel_period = 6 * self.n + self.head.len() / 2;
        loop {
            while self.highest_active > 0 && self.active[self.highest_active].is_empty() {
                self.highest_active -= 1;
            }
            let Some(v) = self.active[self.highest_active].pop() else {
                break;
            };
            if self.height[v] != self.highest_active || !self.is_active(v) {
                continue;
            }
            self.discharge(v);
            if self.work_since_relabel > relabel_period {
                self.global_relabel();
            }
        }
    }

    fn is_active(&self, v: usize) -> bool {
        v != self.source
            && v != self.sink
            && self.excess[v] > self.threshold
            && self.height[v] < 2 * self.n
    }

    fn mark_active(&mut self, v: usize) {
        let h = self.height[v];
        self.active[h].push(v);
        if h > self.highest_active {
            self.highest_active = h;
        }
    }

    fn set_height(&mut self, v: usize, h: usize) {
        let old = self.height[v];
        if old < self.n && self.level_pos[v] != usize::MAX {
            let pos = self.level_pos[v];
            self.level[old].swap_remove(pos);
            if let Some(&moved) = self.level[old].get(pos) {
                self.level_pos[moved] = pos;
            }
            self.level_pos[v] = usize::MAX;
        }
        self.height[v] = h;
        if h < self.n {
            self.level_pos[v] = self.level[h].len();
            self.level[h].push(v);
        }
    }

    fn discharge(&mut self, v: usize) {
        while self.excess[v] > self.threshold {
            if self.current[v] == self.adjacency[v].len() {
                self.relabel(v);
                if self.height[v] >= 2 * self.n {
                    return;
                }
                continue;
            }
            let a = self.adjacency[v][self.current[v]];
            let w = self.head[a];
            if self.residual[a] > self.threshold && self.height[v] == self.height[w] + 1 {
                let amount = self.excess[v].min_of(self.residual[a]);
                let was_idle = !self.is_active(w);
                self.residual[a] -= amount;
                self.residual[a ^ 1] += amount;
                self.excess[v] -= amount;
                self.excess[w] += amount;
                if was_idle && self.is_active(w) {
                    self.mark_active(w);
                }
            } else {
                self.current[v] += 1;
            }
        }
    }

    fn relabel(&mut self, v: usize) {
        self.work_since_relabel += self.adjacency[v].len() + 12;
        let old = self.height[v];
        let mut lowest = 2 * self.n;
        for &a in &self.adjacency[v] {
            if self.residual[a] > self.threshold {
                lowest = lowest.min(self.height[self.head[a]] + 1);
            }
        }
        let new = lowest.min(2 * self.n);
        self.set_height(v, new);
        self.current[v] = 0;
        if old < self.n && self.level[old].is_empty() {
            self.gap(old);
        }
        if self.is_active(v) {
            self.mark_active(v);
        }
    }

    /// No node remains at height `gap`, so nothing above it (below `n`) can
    /// reach the sink; lift those nodes to `n + 1`.
    fn gap(&mut self, gap: usize) {
        for h in gap + 1..self.n {
            for v in std::mem::take(&mut self.level[h]) {
                self.level_pos[v] = usize::MAX;
                self.height[v] = self.n + 1;
                self.current[v] = 0;
                if self.is_active(v) {
                    self.mark_active(v);
                }
            }
        }
    }

    /// Exact distance labels: distance to the sink where it is reachable in
    /// the residual graph, else `n` plus the distance to the source.
    fn global_relabel(&mut self) {
        self.work_since_relabel = 0;
        let n = self.n;
        let unreached = 2 * n;
        let mut height = vec![unreached; n];
        for lvl in &mut self.level {
            lvl.clear();
        }
        self.level_pos.fill(usize::MAX);
        for bucket in &mut self.active {
            bucket.clear();
        }
        self.highest_active = 0;

        let mut queue = VecDeque::new();
        height[self.sink] = 0;
        queue.push_back(self.sink);
        self.reverse_bfs(&mut height, &mut queue, unreached);
        height[self.source] = n;
        queue.push_back(self.source);
        self.reverse_bfs(&mut height, &mut queue, unreached);

        self.height = vec![0; n];
        for (v, &h) in height.iter().enumerate() {
            self.current[v] = 0;
            self.set_height(v, h);
            if self.is_active(v) {
                self.mark_active(v);
            }
        }
    }

    fn reverse_bfs(&self, height: &mut [usize], queue: &mut VecDeque<usize>, unreached: usize) {
        while let Some(w) = queue.pop_front() {
            for &a in &self.adjacency[w] {
                // `a` leaves w; its partner `a ^ 1` enters w from `u`.
                let u = self.head[a];
                if height[u] == unreached && self.residual[a ^ 1] > self.threshold {
                    height[u] = height[w] + 1;
                    queue.push_back(u);
                }
            }
        }
    }

    fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(v) = queue.pop_front() {
            for &a in &self.adjacency[v] {
                let w = self.head[a];
                if !seen[w] && self.residual[a] > self.threshold {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn arc_flows(&self) -> Vec<T> {
        (0..self.head.len() / 2)
            .map(|i| self.original[2 * i] - self.residual[2 * i])
            .collect()
    }
}
