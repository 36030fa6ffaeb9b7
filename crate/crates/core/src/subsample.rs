//! Depth-class subsampling of a rooted tree.
//!
//! Nodes are grouped by depth modulo `k + 1`; the smallest class (lowest
//! residue on ties) plus the root forms `T(k)`. Each kept node hangs below
//! its nearest kept proper ancestor, so a `T(k)` edge spans at most `k + 1`
//! tree edges, and every node is at most `k` edges below its nearest kept
//! ancestor `x′`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::NodeId;
use crate::tree::{RootedTree, NO_PARENT};

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubsampledTree {
    pub k: usize,
    /// Depth residue of the kept class.
    pub residue: usize,
    /// Kept nodes (original ids, ascending); local id = index.
    pub nodes: Vec<NodeId>,
    /// Local id per original node, if kept.
    pub local: Vec<Option<usize>>,
    /// `T(k)` over local ids; edge weights are tree distances in `T`.
    pub tree: RootedTree,
    /// `x′` per original node: nearest kept ancestor, inclusive (original id).
    pub nearest: Vec<NodeId>,
}

impl SubsampledTree {
    pub fn new(t: &RootedTree, k: usize) -> Self {
        let n = t.n();
        let classes = k + 1;
        let mut count = vec![0usize; classes];
        for v in 0..n {
            count[t.depth(v) % classes] += 1;
        }
        let residue = (0..classes).min_by_key(|&c| (count[c], c)).unwrap_or(0);
        let keep: Vec<bool> = (0..n).map(|v| v == t.root() || t.depth(v) % classes == residue).collect();
        let nodes: Vec<NodeId> = (0..n).filter(|&v| keep[v]).collect();
        let mut local = vec![None; n];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = Some(i);
        }
        let mut nearest = vec![0usize; n];
        for &v in t.bfs_order() {
            nearest[v] = if keep[v] { v } else { nearest[t.parent(v).expect("root is kept")] };
        }
        let mut parent = vec![NO_PARENT; nodes.len()];
        let mut weight = vec![0u64; nodes.len()];
        for (i, &v) in nodes.iter().enumerate() {
            if let Some(p) = t.parent(v) {
                let up = nearest[p];
                parent[i] = local[up].expect("kept");
                weight[i] = t.root_dist(v) - t.root_dist(up);
            }
        }
        let root = local[t.root()].expect("root is kept");
        let tree = RootedTree::from_parents(root, parent, weight).expect("subsample is a tree");
        SubsampledTree { k, residue, nodes, local, tree, nearest }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `parent_{T(k)}(v)` as an original id.
    pub fn parent_of(&self, v: NodeId) -> Option<NodeId> {
        let i = self.local[v]?;
        self.tree.parent(i).map(|p| self.nodes[p])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_tree(n: usize) -> RootedTree {
        let parent = (0..n).map(|v| if v == 0 { NO_PARENT } else { v - 1 }).collect();
        RootedTree::from_parents(0, parent, vec![1; n]).unwrap()
    }

    #[test]
    fn p7_with_k1_keeps_odd_depths() {
        let s = SubsampledTree::new(&path_tree(7), 1);
        assert_eq!(s.residue, 1);
        assert_eq!(s.nodes, vec![0, 1, 3, 5]);
        assert!(s.len() as f64 <= 1.0 + 7.0 / 2.0);
        assert_eq!(s.nearest, vec![0, 1, 1, 3, 3, 5, 5]);
        assert_eq!(s.parent_of(5), Some(3));
        assert_eq!(s.parent_of(1), Some(0));
        assert_eq!(s.tree.parent_weight(s.local[3].unwrap()), 2);
    }

    #[test]
    fn k0_is_identity() {
        let t = path_tree(5);
        let s = SubsampledTree::new(&t, 0);
        assert_eq!(s.nodes, vec![0, 1, 2, 3, 4]);
        for v in 1..5 {
            assert_eq!(s.parent_of(v), t.parent(v));
            assert_eq!(s.nearest[v], v);
        }
    }
}
