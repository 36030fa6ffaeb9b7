mod common;

use common::floyd;
use distlab_core::bounds::{
    bound_bits, complete_bipartite_graph, complete_graph, cycle_graph, enumerate_and_verify, k_value, realize,
    table4_k_plus_one, weight_ladder, BaseFamily, BoundError, LowerBoundParams, TableColumn, DEFAULT_BUDGET,
};

/// Printed closed forms for `k + 1`, evaluated as exact rationals
/// `⌊p/q⌋` / `⌈p/q⌉` with the fractions written out.
fn printed(family: BaseFamily, column: TableColumn, w: u64) -> u64 {
    let floor = |p: u64, q: u64| p / q;
    let ceil = |p: u64, q: u64| p.div_ceil(q);
    match (family, column) {
        // ⌈W/2 + 1⌉ = ⌈(W + 2)/2⌉
        (BaseFamily::Complete, TableColumn::Exact) => ceil(w + 2, 2),
        // ⌊W/4 + 3/2⌋ = ⌊(W + 6)/4⌋
        (BaseFamily::Complete, TableColumn::SlackOne) => floor(w + 6, 4),
        // ⌊2W/3 + 5/3⌋
        (BaseFamily::Bipartite, TableColumn::Exact) => floor(2 * w + 5, 3),
        // ⌊W/3 + 5/3⌋
        (BaseFamily::Bipartite, TableColumn::SlackOne) => floor(w + 5, 3),
        _ => 2,
    }
}

#[test]
fn table_closed_forms_match_the_k_formula() {
    for family in [BaseFamily::Complete, BaseFamily::Bipartite] {
        for column in TableColumn::ALL {
            for w in 1..=32u64 {
                let Some((r, ww)) = column.params(family, w) else { continue };
                let k = k_value(family.girth(), r, ww).unwrap();
                assert_eq!(k + 1, printed(family, column, ww), "{family:?} {column:?} W={w}");
                assert_eq!(k + 1, table4_k_plus_one(family, column, ww));
                let n = 64;
                let m = family.edges(n);
                let (total, per) = bound_bits(m, n, k);
                assert!((total - m as f64 * ((k + 1) as f64).log2()).abs() < 1e-9);
                assert!((per - total / n as f64).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn ladder_claims_over_the_sweep() {
    let mut checked = 0;
    for g in 3..=6u64 {
        for w in 1..=32u64 {
            for r in 0..(g - 2) * w {
                let p = LowerBoundParams::new(g, r, w).unwrap();
                let l = weight_ladder(&p).unwrap_or_else(|e| panic!("g={g} W={w} r={r}: {e}"));
                let k = l.k as usize;
                assert!(k >= 1);
                assert_eq!(l.weights.len(), k + 1);
                assert!(l.weights[..k].iter().all(|&x| (1..=w).contains(&x)));
                assert_eq!(l.weights[k - 1], w);
                assert!(l.weights.windows(2).all(|s| s[1] - s[0] == r + 1));
                assert!(l.weights[k] <= (g - 1) * l.weights[0]);
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
    assert!(matches!(LowerBoundParams::new(3, 3, 3), Err(BoundError::Slack { .. })));
}

/// Independent pairwise check of a small family through `realize`.
fn brute_collisions(base: &distlab_core::WeightedGraph, p: &LowerBoundParams) -> u64 {
    let l = weight_ladder(p).unwrap();
    let size = (l.k + 1).pow(base.m() as u32);
    let mats: Vec<Vec<Vec<u64>>> = (0..size).map(|i| floyd(&realize(base, &l, i))).collect();
    let mut c = 0;
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            let apart = mats[a].iter().flatten().zip(mats[b].iter().flatten()).any(|(&x, &y)| x.abs_diff(y) > p.r);
            if !apart {
                c += 1;
            }
        }
    }
    c
}

#[test]
fn small_families_are_verified() {
    let cases = [
        (complete_graph(4), LowerBoundParams::new(3, 0, 1).unwrap(), 64),
        (complete_graph(4), LowerBoundParams::new(3, 0, 3).unwrap(), 729),
        (complete_bipartite_graph(3, 3), LowerBoundParams::new(4, 0, 1).unwrap(), 512),
        (complete_graph(4), LowerBoundParams::new(3, 1, 4).unwrap(), 64),
        (cycle_graph(5), LowerBoundParams::new(5, 0, 2).unwrap(), 243),
        (cycle_graph(5), LowerBoundParams::new(5, 2, 2).unwrap(), 32),
    ];
    for (base, p, size) in cases {
        let rep = enumerate_and_verify(&base, &p, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.family_size, size, "{p:?}");
        assert!(rep.verified, "{p:?}: {:?}", rep.witness);
        assert_eq!(rep.distinguished_pairs, size * (size - 1) / 2);
        if size <= 243 {
            assert_eq!(brute_collisions(&base, &p), 0, "{p:?}");
        }
    }
}

#[test]
fn ladder_violating_the_ratio_collides() {
    // Weights 1, 2, 3 plus deletion on a triangle break W_k ≤ (g−1)·W_0:
    // an edge of weight 3 or a missing edge both leave distance 2 via 1 + 1.
    let base = complete_graph(3);
    let p = LowerBoundParams::new(3, 0, 2).unwrap();
    let l = weight_ladder(&p).unwrap();
    assert_eq!(l.weights, vec![2, 3]);
    let fake = distlab_core::bounds::WeightLadder { k: 2, weights: vec![1, 2, 3] };
    let mats: Vec<Vec<Vec<u64>>> = (0..27).map(|i| floyd(&realize(&base, &fake, i))).collect();
    let mut collide = false;
    for a in 0..27 {
        for b in a + 1..27 {
            collide |= mats[a] == mats[b];
        }
    }
    assert!(collide);
}

#[test]
fn guards() {
    let p = LowerBoundParams::new(4, 0, 1).unwrap();
    assert!(matches!(enumerate_and_verify(&complete_graph(4), &p, DEFAULT_BUDGET), Err(BoundError::BaseGirth { .. })));
    let p = LowerBoundParams::new(3, 0, 8).unwrap();
    assert!(matches!(enumerate_and_verify(&complete_graph(6), &p, DEFAULT_BUDGET), Err(BoundError::Budget { .. })));
}
