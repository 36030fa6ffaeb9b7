mod common;

use common::{corpus, floyd};
use distlab_core::micro::MicroMacroDecomposition;
use distlab_core::subsample::SubsampledTree;
use distlab_core::tree::{nca_from_segments, path_below, shortest_path_tree, HeavyLightDecomposition, RootedTree};

fn trees() -> Vec<(String, distlab_core::WeightedGraph, RootedTree)> {
    corpus(&[1, 5], &[1, 2, 3, 8, 21, 60], 2)
        .into_iter()
        .map(|(name, g)| {
            let t = shortest_path_tree(&g, 0).unwrap();
            (name, g, t)
        })
        .collect()
}

fn ancestors(t: &RootedTree, mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while let Some(p) = t.parent(v) {
        out.push(p);
        v = p;
    }
    out
}

#[test]
fn shortest_path_tree_is_exact() {
    for (name, g, t) in trees() {
        let d = floyd(&g);
        for v in 0..g.n() {
            assert_eq!(t.root_dist(v), d[0][v], "{name} node {v}");
            if let Some(p) = t.parent(v) {
                assert_eq!(g.weight(p, v), Some(t.parent_weight(v) as u32), "{name}");
            }
        }
    }
}

#[test]
fn nca_from_segments_matches_walking_up() {
    for (name, _, t) in trees() {
        let h = HeavyLightDecomposition::new(t.clone());
        let n = t.n();
        for v in 0..n {
            assert!(h.light_depth(v) as f64 <= (n as f64).log2() + 1e-9, "{name}");
            assert_eq!(h.by_dfs[h.dfs[v]], v);
        }
        for x in 0..n {
            for y in 0..n {
                let ax = ancestors(&t, x);
                let z = *ancestors(&t, y).iter().find(|a| ax.contains(a)).unwrap();
                assert_eq!(nca_from_segments(&h.segments[x], &h.segments[y]), h.dfs[z], "{name} ({x},{y})");
                // Intervals below z cover exactly the path (z, y].
                let mut got: Vec<usize> = path_below(&h.segments[y], h.dfs[z]).flat_map(|(lo, hi)| lo..=hi).collect();
                got.sort_unstable();
                let mut want: Vec<usize> =
                    ancestors(&t, y).into_iter().take_while(|&a| a != z).map(|a| h.dfs[a]).collect();
                want.sort_unstable();
                assert_eq!(got, want, "{name} ({x},{y})");
            }
        }
    }
}

#[test]
fn micro_partition_invariants() {
    for (name, _, t) in trees() {
        let n = t.n();
        for beta in [2usize, 4, 6, 10] {
            let d = MicroMacroDecomposition::new(&t, beta);
            let total: usize = d.micro_trees.iter().map(|p| p.edges()).sum();
            assert_eq!(total, n.saturating_sub(1), "{name} beta={beta}");
            let mut seen = vec![false; n];
            for (i, p) in d.micro_trees.iter().enumerate() {
                assert!(p.edges() <= beta && p.edges() >= 1, "{name} beta={beta}");
                for &u in &p.nodes {
                    assert!(!seen[u]);
                    seen[u] = true;
                    assert_eq!(d.micro_index[u], i);
                    // Every non-root node of a micro tree hangs below its root.
                    assert!(ancestors(&t, u)[1..].contains(&p.root));
                    let parent = t.parent(u).unwrap();
                    assert!(parent == p.root || d.micro_index[parent] == i);
                }
            }
            if n > beta + 1 {
                assert!(d.micro_trees.len() <= (n - 1).div_ceil(beta / 2), "{name} beta={beta}");
            }
            // Consecutive macro walk nodes share a micro tree.
            for s in d.macro_walk.windows(2) {
                let (a, b) = (s[0], s[1]);
                assert!(d.micro_root[b] == a || d.micro_root[a] == b, "{name}");
            }
            assert_eq!(d.macro_walk.first(), d.macro_walk.last());
            assert!(d.macro_walk.len() < 2 * d.macro_nodes);
            for y in 0..n {
                assert_eq!(d.macro_walk[d.macro_index[y]], d.micro_root[y]);
                let mask = d.path_mask(&t, y);
                if y != t.root() {
                    let p = &d.micro_trees[d.micro_index[y]];
                    let on_path: Vec<usize> = ancestors(&t, y).into_iter().take_while(|&a| a != p.root).collect();
                    for (i, &u) in p.nodes.iter().enumerate() {
                        assert_eq!(mask >> i & 1 == 1, on_path.contains(&u), "{name}");
                    }
                } else {
                    assert_eq!(mask, 0);
                }
            }
        }
    }
}

#[test]
fn subsampled_tree_properties() {
    for (name, g, t) in trees() {
        let d = floyd(&g);
        let n = t.n();
        let w = u64::from(g.max_weight());
        for k in 0..4usize {
            let s = SubsampledTree::new(&t, k);
            assert!(s.len() as f64 <= 1.0 + n as f64 / (k as f64 + 1.0), "{name} k={k}");
            for (i, &v) in s.nodes.iter().enumerate() {
                if let Some(p) = s.tree.parent(i) {
                    let pv = s.nodes[p];
                    let hops = t.depth(v) - t.depth(pv);
                    assert!(hops <= k + 1, "{name} k={k}");
                    assert!(d[v][pv] <= (k as u64 + 1) * w);
                    assert!(ancestors(&t, v).contains(&pv));
                }
            }
            for v in 0..n {
                let a = s.nearest[v];
                assert!(s.local[a].is_some());
                assert!(t.depth(v) - t.depth(a) <= k);
                assert!(d[v][a] <= k as u64 * w);
            }
            if k == 0 {
                assert_eq!(s.len(), n);
            }
        }
    }
}
