#![allow(dead_code)]

use distlab_core::gen::{generate, GraphKind};
use distlab_core::WeightedGraph;

/// All-pairs distances by Floyd–Warshall, independent of the library's
/// Dijkstra.
pub fn floyd(g: &WeightedGraph) -> Vec<Vec<u64>> {
    let n = g.n();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v, w) in g.edges() {
        let w = u64::from(w);
        if w < d[u][v] {
            d[u][v] = w;
            d[v][u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Small seeded corpus: every generator kind at a few sizes.
pub fn corpus(ws: &[u32], sizes: &[usize], seeds: u64) -> Vec<(String, WeightedGraph)> {
    let mut out = Vec::new();
    for &w in ws {
        for &n in sizes {
            for kind in GraphKind::ALL {
                for seed in 0..seeds {
                    let g = generate(kind, n, w, seed * 7919 + n as u64);
                    out.push((format!("{}-n{}-w{}-s{}", kind.name(), n, w, seed), g));
                }
            }
        }
    }
    out
}
