//! Seeded graph generators.
//!
//! Randomness comes from SplitMix64 (Steele, Lea and Flood): the state is
//! advanced by `0x9E3779B97F4A7C15` and mixed with the constants
//! `0xBF58476D1CE4E5B9` / `0x94D049BB133111EB` and shifts 30/27/31.
//! A bounded draw in `[0, b)` is the high 64 bits of `next() * b`. Both are
//! fixed so a corpus can be regenerated bit-for-bit in any language.

use alloc::vec::Vec;

use crate::ceil_log2;
use crate::graph::{NodeId, WeightedGraph};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, bound)`; `bound` must be non-zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// Uniform weight in `[1, w]`.
    pub fn weight(&mut self, w: u32) -> u32 {
        1 + self.below(u64::from(w)) as u32
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Erdős–Rényi with expected degree about `min(2⌈log₂ n⌉ + 2, n/3)`,
    /// redrawn until connected.
    Er,
    /// Uniform random recursive tree over shuffled ids.
    Tree,
    /// Random bipartite graph, redrawn until connected.
    Bipartite,
    Complete,
    /// `C_n` for `n ≥ 3`, a path otherwise.
    Cycle,
    Path,
}

impl GraphKind {
    pub const ALL: [GraphKind; 6] =
        [GraphKind::Er, GraphKind::Tree, GraphKind::Bipartite, GraphKind::Complete, GraphKind::Cycle, GraphKind::Path];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Er => "er",
            GraphKind::Tree => "tree",
            GraphKind::Bipartite => "bipartite",
            GraphKind::Complete => "complete",
            GraphKind::Cycle => "cycle",
            GraphKind::Path => "path",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// Deterministic connected graph of the given kind with weights uniform in
/// `[1, w]` and declared maximum weight `w`.
pub fn generate(kind: GraphKind, n: usize, w: u32, seed: u64) -> WeightedGraph {
    assert!(n >= 1, "n must be at least 1");
    assert!(w >= 1, "W must be at least 1");
    let mut rng = SplitMix64::new(seed);
    let edges = match kind {
        GraphKind::Complete => {
            let mut e = Vec::with_capacity(n * (n - 1) / 2);
            for u in 0..n {
                for v in u + 1..n {
                    e.push((u, v, rng.weight(w)));
                }
            }
            e
        }
        GraphKind::Path => (1..n).map(|i| (i - 1, i, rng.weight(w))).collect(),
        GraphKind::Cycle if n >= 3 => (0..n).map(|i| (i, (i + 1) % n, rng.weight(w))).collect(),
        GraphKind::Cycle => (1..n).map(|i| (i - 1, i, rng.weight(w))).collect(),
        GraphKind::Tree => {
            let mut ids: Vec<NodeId> = (0..n).collect();
            rng.shuffle(&mut ids);
            (1..n)
                .map(|i| {
                    let p = rng.below(i as u64) as usize;
                    (ids[p], ids[i], rng.weight(w))
                })
                .collect()
        }
        GraphKind::Er => retry_connected(n, &mut rng, |rng, density| {
            let den = (n as u64 - 1).max(1);
            let num = density.min(den);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(num, den) {
                        e.push((u, v, rng.weight(w)));
                    }
                }
            }
            e
        }),
        GraphKind::Bipartite => retry_connected(n, &mut rng, |rng, density| {
            let mut side: Vec<bool> = (0..n).map(|_| rng.chance(1, 2)).collect();
            if n >= 2 {
                side[0] = false;
                side[1] = true;
            }
            let den = (n as u64 / 2).max(1);
            let num = density.min(den);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if side[u] != side[v] && rng.chance(num, den) {
                        e.push((u, v, rng.weight(w)));
                    }
                }
            }
            e
        }),
    };
    WeightedGraph::new(n, w, edges).expect("generated edges are valid")
}

fn retry_connected(
    n: usize,
    rng: &mut SplitMix64,
    mut draw: impl FnMut(&mut SplitMix64, u64) -> Vec<(NodeId, NodeId, u32)>,
) -> Vec<(NodeId, NodeId, u32)> {
    // Capped at n/3 so small graphs are not complete.
    let mut density = (2 * u64::from(ceil_log2(n as u64)) + 2).min((n as u64 / 3).max(1));
    let mut attempts = 0;
    loop {
        let edges = draw(rng, density);
        let g = WeightedGraph::new(n, u32::MAX, edges.iter().copied()).expect("valid edges");
        if g.is_connected() {
            return edges;
        }
        attempts += 1;
        if attempts % 16 == 0 {
            density *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 0 of the reference SplitMix64.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn complete_is_k4() {
        let g = generate(GraphKind::Complete, 4, 1, 3);
        assert_eq!(g.m(), 6);
        assert!(g.is_unweighted());
    }

    #[test]
    fn bipartite_has_no_odd_cycle() {
        for seed in 0..20 {
            let g = generate(GraphKind::Bipartite, 30, 1, seed);
            assert!(g.is_connected());
            assert!(g.is_bipartite());
        }
    }

    #[test]
    fn er_is_deterministic_and_connected() {
        let a = generate(GraphKind::Er, 50, 3, 7);
        let b = generate(GraphKind::Er, 50, 3, 7);
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert!(a.edges().iter().all(|e| (1..=3).contains(&e.2)));
    }

    #[test]
    fn every_kind_connected_for_small_n() {
        for kind in GraphKind::ALL {
            for n in 1..12 {
                let g = generate(kind, n, 2, n as u64);
                assert!(g.is_connected(), "{:?} n={}", kind, n);
            }
        }
    }
}
