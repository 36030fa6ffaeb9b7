//! Rooted spanning trees, heavy-light decomposition and segment-based NCA.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{NodeId, WeightedGraph, INFINITY};

pub const NO_PARENT: NodeId = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("root {0} out of range")]
    RootOutOfRange(NodeId),
    #[error("node {0} has no parent but is not the root")]
    Orphan(NodeId),
    #[error("parent pointers do not form a tree spanning all nodes")]
    NotSpanning,
    #[error("graph is disconnected")]
    Disconnected,
}

/// Tree over nodes `0..n` with parent pointers and parent-edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RootedTree {
    root: NodeId,
    parent: Vec<NodeId>,
    weight: Vec<u64>,
    children: Vec<Vec<NodeId>>,
    depth: Vec<usize>,
    root_dist: Vec<u64>,
    /// Nodes in BFS order from the root; parents precede children.
    order: Vec<NodeId>,
}

impl RootedTree {
    /// Builds from parent pointers (`NO_PARENT` for the root) and the weight
    /// of each node's parent edge (ignored for the root).
    pub fn from_parents(root: NodeId, parent: Vec<NodeId>, weight: Vec<u64>) -> Result<Self, TreeError> {
        let n = parent.len();
        if root >= n {
            return Err(TreeError::RootOutOfRange(root));
        }
        assert_eq!(weight.len(), n);
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v == root {
                continue;
            }
            let p = parent[v];
            if p == NO_PARENT {
                return Err(TreeError::Orphan(v));
            }
            if p >= n {
                return Err(TreeError::NotSpanning);
            }
            children[p].push(v);
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let mut depth = vec![usize::MAX; n];
        let mut root_dist = vec![0u64; n];
        let mut order = Vec::with_capacity(n);
        depth[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &c in &children[u] {
                depth[c] = depth[u] + 1;
                root_dist[c] = root_dist[u] + weight[c];
                order.push(c);
            }
        }
        if order.len() != n {
            return Err(TreeError::NotSpanning);
        }
        let mut parent = parent;
        parent[root] = NO_PARENT;
        let mut weight = weight;
        weight[root] = 0;
        Ok(RootedTree { root, parent, weight, children, depth, root_dist, order })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    /// Weight of the edge from `v` to its parent (0 for the root).
    pub fn parent_weight(&self, v: NodeId) -> u64 {
        self.weight[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    /// Weighted distance from the root along tree edges.
    pub fn root_dist(&self, v: NodeId) -> u64 {
        self.root_dist[v]
    }

    /// BFS order from the root (parents before children).
    pub fn bfs_order(&self) -> &[NodeId] {
        &self.order
    }

    /// True if `a` is an ancestor of `b` (inclusive).
    pub fn is_ancestor(&self, a: NodeId, mut b: NodeId) -> bool {
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
        }
        a == b
    }

    /// Nearest common ancestor by walking up (reference implementation).
    pub fn nca_naive(&self, mut a: NodeId, mut b: NodeId) -> NodeId {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
        }
        a
    }

    /// Weighted tree distance between two nodes.
    pub fn tree_dist(&self, a: NodeId, b: NodeId) -> u64 {
        let z = self.nca_naive(a, b);
        self.root_dist[a] + self.root_dist[b] - 2 * self.root_dist[z]
    }

    /// Subtree sizes.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.n()];
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent(v) {
                size[p] += size[v];
            }
        }
        size
    }
}

/// Shortest-path tree rooted at `r`. Each node's parent is its lowest-id
/// neighbor on some shortest path from `r`.
pub fn shortest_path_tree(g: &WeightedGraph, r: NodeId) -> Result<RootedTree, TreeError> {
    let dist = g.sssp(r);
    if dist.contains(&INFINITY) {
        return Err(TreeError::Disconnected);
    }
    let n = g.n();
    let mut parent = vec![NO_PARENT; n];
    let mut weight = vec![0u64; n];
    for v in 0..n {
        if v == r {
            continue;
        }
        let (p, w) = g
            .neighbors(v)
            .iter()
            .find(|&&(u, w)| dist[u] + u64::from(w) == dist[v])
            .copied()
            .expect("every non-root node has a shortest-path predecessor");
        parent[v] = p;
        weight[v] = u64::from(w);
    }
    RootedTree::from_parents(r, parent, weight)
}

/// Contiguous run of a root-to-node path on one heavy path, as DFS numbers
/// of its first (topmost) and last node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Segment {
    pub first: usize,
    pub last: usize,
}

/// Heavy-light decomposition with heavy-first DFS numbering.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HeavyLightDecomposition {
    pub tree: RootedTree,
    pub size: Vec<usize>,
    pub heavy_child: Vec<Option<NodeId>>,
    /// DFS number per node.
    pub dfs: Vec<usize>,
    /// Node per DFS number.
    pub by_dfs: Vec<NodeId>,
    /// Root-to-node heavy path segments per node.
    pub segments: Vec<Vec<Segment>>,
    /// Tree distances from each segment's first and last node to the node.
    pub segment_dists: Vec<Vec<(u64, u64)>>,
}

impl HeavyLightDecomposition {
    pub fn new(tree: RootedTree) -> Self {
        let n = tree.n();
        let size = tree.subtree_sizes();
        let heavy_child: Vec<Option<NodeId>> = (0..n)
            .map(|v| {
                // Children are ascending, so the first maximum wins ties.
                let mut best: Option<NodeId> = None;
                for &c in tree.children(v) {
                    if best.is_none_or(|b| size[c] > size[b]) {
                        best = Some(c);
                    }
                }
                best
            })
            .collect();

        let mut dfs = vec![0usize; n];
        let mut by_dfs = Vec::with_capacity(n);
        let mut stack = vec![tree.root()];
        while let Some(v) = stack.pop() {
            dfs[v] = by_dfs.len();
            by_dfs.push(v);
            let heavy = heavy_child[v];
            for &c in tree.children(v).iter().rev() {
                if Some(c) != heavy {
                    stack.push(c);
                }
            }
            if let Some(h) = heavy {
                stack.push(h);
            }
        }

        let mut segments: Vec<Vec<Segment>> = vec![Vec::new(); n];
        for &v in &by_dfs {
            let segs = match tree.parent(v) {
                None => vec![Segment { first: dfs[v], last: dfs[v] }],
                Some(p) => {
                    let mut s = segments[p].clone();
                    if heavy_child[p] == Some(v) {
                        s.last_mut().expect("non-empty").last = dfs[v];
                    } else {
                        s.push(Segment { first: dfs[v], last: dfs[v] });
                    }
                    s
                }
            };
            segments[v] = segs;
        }
        let segment_dists = (0..n)
            .map(|v| {
                let rd = tree.root_dist(v);
                segments[v]
                    .iter()
                    .map(|s| (rd - tree.root_dist(by_dfs[s.first]), rd - tree.root_dist(by_dfs[s.last])))
                    .collect()
            })
            .collect();
        HeavyLightDecomposition { tree, size, heavy_child, dfs, by_dfs, segments, segment_dists }
    }

    pub fn n(&self) -> usize {
        self.dfs.len()
    }

    /// Number of light ancestors of `v` (inclusive), not counting the root.
    pub fn light_depth(&self, v: NodeId) -> usize {
        self.segments[v].len() - 1
    }
}

/// DFS number of the nearest common ancestor of two nodes, from their
/// heavy-path segment lists alone.
///
/// Take the longest common prefix of heavy paths (equal `first`). The NCA
/// sits on the last shared path, at whichever exit is higher.
pub fn nca_from_segments(sx: &[Segment], sy: &[Segment]) -> usize {
    debug_assert!(!sx.is_empty() && !sy.is_empty());
    debug_assert_eq!(sx[0].first, sy[0].first, "segments from different trees");
    let mut i = 0;
    while i + 1 < sx.len() && i + 1 < sy.len() && sx[i + 1].first == sy[i + 1].first {
        i += 1;
    }
    sx[i].last.min(sy[i].last)
}

/// Index of the segment containing DFS number `d`, if any.
pub fn segment_index(segs: &[Segment], d: usize) -> Option<usize> {
    segs.iter().position(|s| s.first <= d && d <= s.last)
}

/// DFS intervals `[lo, hi]` covering the tree path `(z, v]`, where `z` (by
/// DFS number) is an ancestor of the node owning `segs`.
pub fn path_below(segs: &[Segment], z: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let i = segment_index(segs, z).expect("z must be an ancestor");
    let head = if z < segs[i].last { Some((z + 1, segs[i].last)) } else { None };
    head.into_iter().chain(segs[i + 1..].iter().map(|s| (s.first, s.last)))
}
