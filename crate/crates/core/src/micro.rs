//! Micro/macro decomposition of a rooted tree.
//!
//! The tree's edges are partitioned into rooted subtrees (micro trees) of at
//! most `β` edges. Their roots, plus the tree root, form the macro tree, in
//! which each micro root hangs below the root of the micro tree that contains
//! it. A closed Euler tour of the macro tree gives the walk used for the
//! macro prefix sums.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::NodeId;
use crate::tree::RootedTree;

/// One part of the edge partition: a root plus its non-root nodes `T_i*`
/// in preorder (children ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MicroTree {
    pub root: NodeId,
    pub nodes: Vec<NodeId>,
}

impl MicroTree {
    /// Number of edges, `|T_i*|`.
    pub fn edges(&self) -> usize {
        self.nodes.len()
    }
}

/// Edge partition of `t` into at most `⌈(n−1)/κ⌉` rooted subtrees with at
/// most `2κ − 1` edges each.
///
/// Bottom-up greedy: every node collects the pending parts of its children
/// (each with fewer than `κ` edges, plus the edge to the child) into a
/// bucket, and emits the bucket as a micro tree as soon as it holds `κ` or
/// more edges. Whatever is left stays pending for the parent; at the root it
/// becomes the last micro tree. All but possibly that last part have at
/// least `κ` edges, which gives the count bound.
pub fn micro_partition(t: &RootedTree, kappa: usize) -> Vec<MicroTree> {
    assert!(kappa >= 1, "kappa must be positive");
    let n = t.n();
    let mut pending: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut parts = Vec::new();
    for &v in t.bfs_order().iter().rev() {
        let mut bucket: Vec<NodeId> = Vec::new();
        for &c in t.children(v) {
            bucket.push(c);
            bucket.append(&mut pending[c]);
            if bucket.len() >= kappa {
                parts.push(MicroTree { root: v, nodes: core::mem::take(&mut bucket) });
            }
        }
        if v == t.root() {
            if !bucket.is_empty() {
                parts.push(MicroTree { root: v, nodes: bucket });
            }
        } else {
            pending[v] = bucket;
        }
    }
    parts
}

/// Micro trees, macro tree and macro walk for one rooted spanning tree.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MicroMacroDecomposition {
    pub beta: usize,
    pub micro_trees: Vec<MicroTree>,
    /// `i(u)`: micro tree holding `u` as a non-root node. For the tree root
    /// this is the first micro tree rooted at it (0 when `n = 1`).
    pub micro_index: Vec<usize>,
    /// Position of `u` within `micro_trees[i(u)].nodes` (0 for the root).
    pub position: Vec<usize>,
    /// `MicroRoot(u)`; the tree root maps to itself.
    pub micro_root: Vec<NodeId>,
    /// Closed Euler tour of the macro tree starting and ending at the root.
    pub macro_walk: Vec<NodeId>,
    /// `m(u)`: first walk position of `MicroRoot(u)`.
    pub macro_index: Vec<usize>,
    pub macro_nodes: usize,
}

impl MicroMacroDecomposition {
    /// Decomposes `t` into micro trees of at most `beta` edges (`beta ≥ 2`).
    /// When the whole tree fits (`n − 1 ≤ β`) it becomes a single micro tree.
    pub fn new(t: &RootedTree, beta: usize) -> Self {
        assert!(beta >= 2, "beta must be at least 2");
        let n = t.n();
        let r = t.root();
        let mut parts = if n == 1 {
            Vec::new()
        } else if n - 1 <= beta {
            vec![MicroTree { root: r, nodes: (0..n).filter(|&v| v != r).collect() }]
        } else {
            micro_partition(t, beta / 2)
        };

        let mut micro_index = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            for &u in &p.nodes {
                micro_index[u] = i;
            }
        }
        // Reorder each part's nodes into preorder within the part.
        let mut position = vec![0usize; n];
        for (i, p) in parts.iter_mut().enumerate() {
            let mut ordered = Vec::with_capacity(p.nodes.len());
            let mut stack: Vec<NodeId> =
                t.children(p.root).iter().rev().copied().filter(|&c| micro_index[c] == i).collect();
            while let Some(u) = stack.pop() {
                position[u] = ordered.len();
                ordered.push(u);
                stack.extend(t.children(u).iter().rev().copied().filter(|&c| micro_index[c] == i));
            }
            debug_assert_eq!(ordered.len(), p.nodes.len());
            p.nodes = ordered;
        }
        micro_index[r] = parts.iter().position(|p| p.root == r).unwrap_or(0);

        let micro_root: Vec<NodeId> = (0..n).map(|u| if u == r { r } else { parts[micro_index[u]].root }).collect();

        // Macro tree: micro roots (and the root), parent = MicroRoot(v).
        let mut is_macro = vec![false; n];
        is_macro[r] = true;
        for p in &parts {
            is_macro[p.root] = true;
        }
        let mut macro_children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut macro_nodes = 0;
        for v in 0..n {
            if is_macro[v] {
                macro_nodes += 1;
                if v != r {
                    macro_children[micro_root[v]].push(v);
                }
            }
        }
        let macro_walk = euler_tour(r, &macro_children);
        let mut first = vec![usize::MAX; n];
        for (i, &v) in macro_walk.iter().enumerate() {
            if first[v] == usize::MAX {
                first[v] = i;
            }
        }
        let macro_index = (0..n).map(|u| first[micro_root[u]]).collect();

        MicroMacroDecomposition {
            beta,
            micro_trees: parts,
            micro_index,
            position,
            micro_root,
            macro_walk,
            macro_index,
            macro_nodes,
        }
    }

    pub fn n(&self) -> usize {
        self.micro_index.len()
    }

    /// Number of walk steps `h` (entries minus one).
    pub fn walk_len(&self) -> usize {
        self.macro_walk.len() - 1
    }

    /// Bit mask over `T*_{i(y)}` positions of the nodes on the path from
    /// `MicroRoot(y)` (exclusive) down to `y` (inclusive). Zero for the root.
    pub fn path_mask(&self, t: &RootedTree, y: NodeId) -> u64 {
        if y == t.root() {
            return 0;
        }
        let i = self.micro_index[y];
        let top = self.micro_trees[i].root;
        let mut mask = 0u64;
        let mut u = y;
        while u != top {
            mask |= 1 << self.position[u];
            u = t.parent(u).expect("below micro root");
        }
        mask
    }
}

/// Closed Euler tour: every tree edge walked down and back up.
pub(crate) fn euler_tour(root: NodeId, children: &[Vec<NodeId>]) -> Vec<NodeId> {
    let mut walk = vec![root];
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i < children[v].len() {
            top.1 += 1;
            let c = children[v][i];
            walk.push(c);
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                walk.push(p);
            }
        }
    }
    walk
}
