//! Counting lower bound for additive distance labeling over all weighted
//! subgraphs of a base graph, and an exhaustive checker for small bases.
//!
//! For a base graph of girth at least `g` and slack `r < (g−2)W`, let
//! `k = ⌊(g−2)/(g−1) · (W/(r+1) + 1)⌋`. Coloring each edge with `0..=k`
//! (color `k` deletes the edge, color `i` gives weight `W_i = W − (k−i−1)(r+1)`)
//! yields `(k+1)^m` graphs with pairwise different `r`-approximate distance
//! matrices, so some label needs `(m/n)·log₂(k+1)` bits.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{NodeId, WeightedGraph, INFINITY};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("girth must be at least 3, got {0}")]
    Girth(u64),
    #[error("W must be at least 1")]
    Weight,
    #[error("slack r={r} outside [0, (g-2)W) = [0, {limit})")]
    Slack { r: u64, limit: u64 },
    #[error("ladder check failed: {0}")]
    Ladder(&'static str),
    #[error("family of {size} realizations exceeds budget {budget}")]
    Budget { size: u128, budget: u64 },
    #[error("base graph has girth {actual:?}, below {required}")]
    BaseGirth { actual: Option<usize>, required: u64 },
    #[error("base graph too large for exhaustive checks")]
    TooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LowerBoundParams {
    pub g: u64,
    pub r: u64,
    pub w: u64,
}

impl LowerBoundParams {
    pub fn new(g: u64, r: u64, w: u64) -> Result<Self, BoundError> {
        if g < 3 {
            return Err(BoundError::Girth(g));
        }
        if w == 0 {
            return Err(BoundError::Weight);
        }
        let limit = (g - 2) * w;
        if r >= limit {
            return Err(BoundError::Slack { r, limit });
        }
        Ok(LowerBoundParams { g, r, w })
    }

    /// `k = ⌊(g−2)(W+r+1) / ((g−1)(r+1))⌋`, the floor formula over integers.
    pub fn k(&self) -> u64 {
        ((self.g - 2) * (self.w + self.r + 1)) / ((self.g - 1) * (self.r + 1))
    }
}

pub fn k_value(g: u64, r: u64, w: u64) -> Result<u64, BoundError> {
    Ok(LowerBoundParams::new(g, r, w)?.k())
}

/// The weights `W_0 < … < W_k` of the coloring family.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WeightLadder {
    pub k: u64,
    pub weights: Vec<u64>,
}

/// Builds the ladder and checks `k ≥ 1`, `W_0..W_{k−1} ∈ [1, W]`,
/// `W_{i+1} = W_i + r + 1` and `W_k ≤ (g−1)·W_0`.
pub fn weight_ladder(p: &LowerBoundParams) -> Result<WeightLadder, BoundError> {
    let k = p.k();
    if k < 1 {
        return Err(BoundError::Ladder("k < 1"));
    }
    let weights: Vec<u64> = (0..=k)
        .map(|i| {
            // W − (k−i−1)(r+1), with i = k giving W + r + 1.
            let down = (k as i64 - i as i64 - 1) * (p.r as i64 + 1);
            (p.w as i64 - down) as u64
        })
        .collect();
    if (p.w as i64) - (k as i64 - 1) * (p.r as i64 + 1) < 1 {
        return Err(BoundError::Ladder("W_0 < 1"));
    }
    if weights[..k as usize].iter().any(|&x| x < 1 || x > p.w) {
        return Err(BoundError::Ladder("W_i outside [1, W]"));
    }
    if weights.windows(2).any(|s| s[1] != s[0] + p.r + 1) {
        return Err(BoundError::Ladder("W_{i+1} != W_i + r + 1"));
    }
    if weights[k as usize] > (p.g - 1) * weights[0] {
        return Err(BoundError::Ladder("W_k > (g-1) W_0"));
    }
    Ok(WeightLadder { k, weights })
}

/// Total bits `m·log₂(k+1)` and per-label bits `(m/n)·log₂(k+1)`.
pub fn bound_bits(m: u64, n: u64, k: u64) -> (f64, f64) {
    let total = m as f64 * libm::log2((k + 1) as f64);
    (total, total / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum BaseFamily {
    /// `K_n`: `m = n(n−1)/2`, `g = 3`.
    Complete,
    /// `K_{n/2,n/2}`: `m = n²/4`, `g = 4`.
    Bipartite,
}

impl BaseFamily {
    pub fn girth(self) -> u64 {
        match self {
            BaseFamily::Complete => 3,
            BaseFamily::Bipartite => 4,
        }
    }

    /// Edge count for `n` nodes (`n` even for the bipartite family).
    pub fn edges(self, n: u64) -> u64 {
        match self {
            BaseFamily::Complete => n * (n - 1) / 2,
            BaseFamily::Bipartite => (n / 2) * (n / 2),
        }
    }
}

/// Column of the closed-form lower bound table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum TableColumn {
    /// `r = 0`, any `W ≥ 1`.
    Exact,
    /// `r = 1`, `W ≥ 2` for general graphs.
    SlackOne,
    /// `r = 0`, `W = 1`.
    Unweighted,
    /// `r = (g−2)W − 1`.
    MaxSlack,
}

impl TableColumn {
    pub const ALL: [TableColumn; 4] =
        [TableColumn::Exact, TableColumn::SlackOne, TableColumn::Unweighted, TableColumn::MaxSlack];

    /// The `(r, W)` this column describes, or `None` if `w` is outside it.
    pub fn params(self, family: BaseFamily, w: u64) -> Option<(u64, u64)> {
        let g = family.girth();
        match self {
            TableColumn::Exact => Some((0, w)),
            TableColumn::SlackOne => (1 < (g - 2) * w).then_some((1, w)),
            TableColumn::Unweighted => Some((0, 1)),
            TableColumn::MaxSlack => Some(((g - 2) * w - 1, w)),
        }
    }
}

/// `k + 1` as printed in the closed-form table: `⌈W/2 + 1⌉`,
/// `⌊W/4 + 3/2⌋`, `⌊2W/3 + 5/3⌋`, `⌊W/3 + 5/3⌋`, or 2 for the last columns.
pub fn table4_k_plus_one(family: BaseFamily, column: TableColumn, w: u64) -> u64 {
    match (family, column) {
        (BaseFamily::Complete, TableColumn::Exact) => (w + 2).div_ceil(2),
        (BaseFamily::Complete, TableColumn::SlackOne) => (w + 6) / 4,
        (BaseFamily::Bipartite, TableColumn::Exact) => (2 * w + 5) / 3,
        (BaseFamily::Bipartite, TableColumn::SlackOne) => (w + 5) / 3,
        (_, TableColumn::Unweighted | TableColumn::MaxSlack) => 2,
    }
}

/// Length in edges of a shortest cycle, `None` for forests. Brute force:
/// one BFS per vertex, each non-tree edge closing a walk through the source.
pub fn girth(g: &WeightedGraph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Unit-weight complete graph `K_n`.
pub fn complete_graph(n: usize) -> WeightedGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1)));
    WeightedGraph::new(n, 1, edges).expect("valid complete graph")
}

/// Unit-weight complete bipartite graph `K_{a,b}` (sides `0..a`, `a..a+b`).
pub fn complete_bipartite_graph(a: usize, b: usize) -> WeightedGraph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v, 1)));
    WeightedGraph::new(a + b, 1, edges).expect("valid complete bipartite graph")
}

/// Unit-weight cycle `C_n` (`n ≥ 3`).
pub fn cycle_graph(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, 1, (0..n).map(|i| (i, (i + 1) % n, 1))).expect("valid cycle")
}

/// Outcome of an exhaustive family check.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilyReport {
    pub params: LowerBoundParams,
    pub k: u64,
    pub ladder: Vec<u64>,
    pub family_size: u64,
    /// Pairs of realizations told apart by some `(x, y)`.
    pub distinguished_pairs: u64,
    /// Pairs with no distinguishing entry; zero when the claim holds.
    pub collisions: u64,
    /// First colliding pair of coloring indices, if any.
    pub witness: Option<(u64, u64)>,
    pub verified: bool,
}

/// Default cap on the number of realizations.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Enumerates every coloring of `base` (colexicographic, edge 0 fastest),
/// computes each realization's distance matrix (∞ for unconnected pairs)
/// and checks that every two realizations differ by more than `r` somewhere.
///
/// For `r = 0` matrices are sorted and adjacent ones compared; otherwise
/// all pairs are compared.
pub fn enumerate_and_verify(
    base: &WeightedGraph,
    p: &LowerBoundParams,
    budget: u64,
) -> Result<FamilyReport, BoundError> {
    let n = base.n();
    if n > 64 {
        return Err(BoundError::TooLarge);
    }
    let actual = girth(base);
    if actual.is_some_and(|a| (a as u64) < p.g) {
        return Err(BoundError::BaseGirth { actual, required: p.g });
    }
    let ladder = weight_ladder(p)?;
    let k = ladder.k;
    let m = base.m();
    let size = (u128::from(k) + 1).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > u128::from(budget) {
        return Err(BoundError::Budget { size, budget });
    }
    let size = size as u64;

    let edges = base.edges();
    let mut colors = vec![0u64; m];
    let mut matrices: Vec<Vec<u64>> = Vec::with_capacity(size as usize);
    for idx in 0..size {
        let mut d = vec![INFINITY; n * n];
        for v in 0..n {
            d[v * n + v] = 0;
        }
        for (e, &(u, v, _)) in edges.iter().enumerate() {
            if colors[e] < k {
                let w = ladder.weights[colors[e] as usize];
                d[u * n + v] = w;
                d[v * n + u] = w;
            }
        }
        floyd_warshall(&mut d, n);
        matrices.push(d);
        if idx + 1 < size {
            for c in colors.iter_mut() {
                *c += 1;
                if *c <= k {
                    break;
                }
                *c = 0;
            }
        }
    }

    let total_pairs = size * (size - 1) / 2;
    let mut collisions = 0u64;
    let mut witness = None;
    if p.r == 0 {
        let mut order: Vec<usize> = (0..matrices.len()).collect();
        order.sort_by(|&a, &b| matrices[a].cmp(&matrices[b]));
        // Count colliding pairs within each run of equal matrices.
        let mut i = 0;
        while i < order.len() {
            let mut j = i + 1;
            while j < order.len() && matrices[order[j]] == matrices[order[i]] {
                j += 1;
            }
            let run = (j - i) as u64;
            if run > 1 {
                collisions += run * (run - 1) / 2;
                if witness.is_none() {
                    let (a, b) = (order[i].min(order[i + 1]), order[i].max(order[i + 1]));
                    witness = Some((a as u64, b as u64));
                }
            }
            i = j;
        }
    } else {
        for a in 0..matrices.len() {
            for b in a + 1..matrices.len() {
                if !distinguishable(&matrices[a], &matrices[b], p.r) {
                    collisions += 1;
                    witness.get_or_insert((a as u64, b as u64));
                }
            }
        }
    }
    Ok(FamilyReport {
        params: *p,
        k,
        ladder: ladder.weights,
        family_size: size,
        distinguished_pairs: total_pairs - collisions,
        collisions,
        witness,
        verified: collisions == 0,
    })
}

/// Some entry's windows `[d, d+r]` and `[d′, d′+r]` are disjoint. ∞ equals
/// only ∞ and is farther than any finite value.
fn distinguishable(a: &[u64], b: &[u64], r: u64) -> bool {
    a.iter().zip(b).any(|(&x, &y)| match (x == INFINITY, y == INFINITY) {
        (true, true) => false,
        (true, false) | (false, true) => true,
        (false, false) => x.abs_diff(y) > r,
    })
}

fn floyd_warshall(d: &mut [u64], n: usize) {
    for via in 0..n {
        for i in 0..n {
            let a = d[i * n + via];
            if a == INFINITY {
                continue;
            }
            for j in 0..n {
                let b = d[via * n + j];
                if b != INFINITY && a + b < d[i * n + j] {
                    d[i * n + j] = a + b;
                }
            }
        }
    }
}

/// Realizes coloring number `index` of `base` as a weighted graph (edges of
/// color `k` omitted).
pub fn realize(base: &WeightedGraph, ladder: &WeightLadder, index: u64) -> WeightedGraph {
    let k = ladder.k;
    let mut rest = index;
    let mut edges: Vec<(NodeId, NodeId, u32)> = Vec::new();
    for &(u, v, _) in base.edges() {
        let c = rest % (k + 1);
        rest /= k + 1;
        if c < k {
            edges.push((u, v, ladder.weights[c as usize] as u32));
        }
    }
    let w = ladder.weights[..k as usize].iter().copied().max().unwrap_or(1).max(1) as u32;
    WeightedGraph::new(base.n(), w, edges).expect("subgraph of a valid base")
}
