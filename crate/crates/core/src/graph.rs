//! Weighted undirected graphs and the shortest-path oracle every scheme is
//! checked against.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use thiserror::Error;

/// Dense node index in `[0, n)`.
pub type NodeId = usize;

/// Distance sentinel for unreachable pairs. Larger than any finite distance
/// and absorbing under [`dist_add`].
pub const INFINITY: u64 = u64::MAX;

/// Saturating addition that keeps [`INFINITY`] absorbing.
#[inline]
pub fn dist_add(a: u64, b: u64) -> u64 {
    if a == INFINITY || b == INFINITY {
        INFINITY
    } else {
        a + b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("declared maximum weight must be at least 1")]
    ZeroMaxWeight,
    #[error("edge ({u}, {v}) references a node outside [0, {n})")]
    NodeOutOfRange { u: NodeId, v: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge ({u}, {v}) has weight {w} outside [1, {max}]")]
    WeightOutOfRange { u: NodeId, v: NodeId, w: u32, max: u32 },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
}

/// Undirected graph with integer edge weights in `[1, W]`.
///
/// Edges are stored once with `u < v`, sorted; adjacency lists are sorted by
/// neighbor id so every traversal is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    max_weight: u32,
    edges: Vec<(NodeId, NodeId, u32)>,
    adj: Vec<Vec<(NodeId, u32)>>,
}

impl WeightedGraph {
    /// Validates and builds a graph with declared maximum weight `max_weight`.
    pub fn new(
        n: usize,
        max_weight: u32,
        edges: impl IntoIterator<Item = (NodeId, NodeId, u32)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if max_weight == 0 {
            return Err(GraphError::ZeroMaxWeight);
        }
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 || w > max_weight {
                return Err(GraphError::WeightOutOfRange { u, v, w, max: max_weight });
            }
            list.push((u.min(v), u.max(v), w));
        }
        list.sort_unstable();
        for pair in list.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in &list {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(WeightedGraph { n, max_weight, edges: list, adj })
    }

    /// Like [`WeightedGraph::new`] with `W` set to the largest observed weight
    /// (1 for an edgeless graph).
    pub fn with_inferred_weight(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, u32)>,
    ) -> Result<Self, GraphError> {
        let edges: Vec<_> = edges.into_iter().collect();
        let w = edges.iter().map(|e| e.2).max().unwrap_or(1).max(1);
        Self::new(n, w, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Declared maximum edge weight `W`.
    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn edges(&self) -> &[(NodeId, NodeId, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, u32)] {
        &self.adj[u]
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<u32> {
        self.adj[u].binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| self.adj[u][i].1)
    }

    /// True when every weight is 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1)
    }

    /// Component index per node, numbered by smallest member id.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        match self.components().0 {
            1 => Ok(()),
            c => Err(GraphError::Disconnected { components: c }),
        }
    }

    /// Splits into connected components. Each entry is the component as a
    /// graph over local ids plus the local-to-global id map (ascending).
    /// Every component keeps the parent's declared `W`.
    pub fn split_components(&self) -> Vec<(WeightedGraph, Vec<NodeId>)> {
        let (count, comp) = self.components();
        let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); count];
        let mut local = vec![0usize; self.n];
        for v in 0..self.n {
            local[v] = members[comp[v]].len();
            members[comp[v]].push(v);
        }
        let mut edge_lists: Vec<Vec<(NodeId, NodeId, u32)>> = vec![Vec::new(); count];
        for &(u, v, w) in &self.edges {
            edge_lists[comp[u]].push((local[u], local[v], w));
        }
        members
            .into_iter()
            .zip(edge_lists)
            .map(|(ids, edges)| {
                let g =
                    WeightedGraph::new(ids.len(), self.max_weight, edges).expect("component of a valid graph is valid");
                (g, ids)
            })
            .collect()
    }

    /// Single-source shortest distances (Dijkstra). Unreachable nodes get
    /// [`INFINITY`].
    pub fn sssp(&self, s: NodeId) -> Vec<u64> {
        let mut dist = vec![INFINITY; self.n];
        let mut heap = BinaryHeap::new();
        dist[s] = 0;
        heap.push(Reverse((0u64, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let nd = d + u64::from(w);
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }

    /// Dense all-pairs distance matrix from `n` Dijkstra runs.
    pub fn all_pairs_oracle(&self) -> DistanceOracle {
        let mut dist = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            dist.extend(self.sssp(s));
        }
        DistanceOracle { n: self.n, dist }
    }

    /// Two-coloring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Dense `n × n` matrix of exact shortest distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceOracle {
    /// Wraps a row-major matrix. Panics if the length is not `n²`.
    pub fn from_matrix(n: usize, dist: Vec<u64>) -> Self {
        assert_eq!(dist.len(), n * n, "matrix must be n x n");
        DistanceOracle { n, dist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: NodeId, v: NodeId) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: NodeId) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.dist
    }

    /// `δ_x(u, v) = dist(x, v) − dist(x, u)`. Both distances must be finite.
    #[inline]
    pub fn delta(&self, x: NodeId, u: NodeId, v: NodeId) -> i64 {
        self.dist(x, v) as i64 - self.dist(x, u) as i64
    }
}

/// Free-function form of [`DistanceOracle::delta`].
pub fn delta(oracle: &DistanceOracle, x: NodeId, u: NodeId, v: NodeId) -> i64 {
    oracle.delta(x, u, v)
}
