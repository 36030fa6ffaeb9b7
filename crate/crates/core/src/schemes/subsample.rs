//! Additive approximation by subsampling the shortest-path tree.
//!
//! `T(k)` keeps one depth class modulo `k + 1` plus the root; every node
//! `x` is at most `k` edges below its nearest kept ancestor `x′`. The
//! heavy-path window scheme runs on `T(k)`, whose edges span up to
//! `(k+1)W`, so each label holds `⌊n_k/2⌋` deltas. With `D > 0` those deltas
//! are also rounded into a reduced alphabet.
//!
//! Decoding, for the pair `(x, y)`:
//! 1. `x` is a `T`-ancestor of `y` (or the reverse): the exact tree distance.
//! 2. `x′` is a `T`-ancestor of `y` (or `y′` of `x`): `kW + dist(x′, y)`.
//! 3. Otherwise `kW + dist(x, z′) + Σ_{v ∈ T(k)(z′, y′]} δ_x(parent(v), v)`
//!    with `z′` the nearest common ancestor of `x′` and `y′` in `T(k)`.
//!
//! Fields: `[dfs(x), dfs(x′), dist(x, r), dist(x′, r), dfs_k(x′), n_k, kW,
//! R, D]`, `ℓ_T(x)`, `ℓ_T(x′)`, `ℓ_{T(k)}(x′)`, the distances from `x` to
//! the endpoints of `ℓ_{T(k)}(x′)`, and the `T(k)` window.

use alloc::vec::Vec;

use super::alphabet::Alphabet;
use super::heavypath::{covered, delta_digits, dist_to_ancestor, read_segments, segment_field, window, window_sum};
use super::layout::{uint_array, LabelReader};
use super::{Ctx, SchemeError};
use crate::codec::{encode_digits, BitString};
use crate::graph::{DistanceOracle, WeightedGraph};
use crate::probe::Probe;
use crate::subsample::SubsampledTree;
use crate::tree::{nca_from_segments, path_below, shortest_path_tree, HeavyLightDecomposition, Segment};

const WINDOW: usize = 5;

pub(crate) fn build(g: &WeightedGraph, oracle: &DistanceOracle, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    let n = g.n();
    let k = usize::from(ctx.params.k);
    let w = u64::from(ctx.w);
    let alpha = Alphabet::new((k as u64 + 1) * w, u64::from(ctx.params.d))?;
    let hld = HeavyLightDecomposition::new(shortest_path_tree(g, 0)?);
    let t = &hld.tree;
    let sub = SubsampledTree::new(t, k);
    let hk = HeavyLightDecomposition::new(sub.tree.clone());
    let tk = &hk.tree;
    let nk = sub.len();
    (0..n)
        .map(|x| {
            let xp = sub.nearest[x];
            let xl = sub.local[xp].expect("nearest kept ancestor is kept");
            let delta: Vec<i64> = (0..nk)
                .map(|v| match tk.parent(v) {
                    Some(p) => oracle.dist(x, sub.nodes[v]) as i64 - oracle.dist(x, sub.nodes[p]) as i64,
                    None => 0,
                })
                .collect();
            let digits = delta_digits(tk, &delta, &alpha, xl);
            let win = window(&hk, &digits, hk.dfs[xl]);
            let ends: Vec<u64> = hk.segments[xl]
                .iter()
                .flat_map(|s| [s.first, s.last].map(|d| oracle.dist(x, sub.nodes[hk.by_dfs[d]])))
                .collect();
            let mut wr = ctx.writer();
            wr.field(uint_array(&[
                hld.dfs[x] as u64,
                hld.dfs[xp] as u64,
                oracle.dist(x, t.root()),
                oracle.dist(xp, t.root()),
                hk.dfs[xl] as u64,
                nk as u64,
                k as u64 * w,
                alpha.radius,
                alpha.dropped,
            ]));
            wr.field(segment_field(&hld.segments[x]));
            wr.field(segment_field(&hld.segments[xp]));
            wr.field(segment_field(&hk.segments[xl]));
            wr.field(uint_array(&ends));
            wr.field(encode_digits(&win, alpha.size())?);
            Ok(wr.finish())
        })
        .collect()
}

struct View<'l, 'a> {
    l: &'l LabelReader<'a>,
    dfs: usize,
    dfs_p: usize,
    root_dist: u64,
    root_dist_p: u64,
    dfs_k: usize,
    segs: Vec<Segment>,
    segs_p: Vec<Segment>,
    segs_k: Vec<Segment>,
    ends: Vec<u64>,
}

fn view<'l, 'a, P: Probe>(l: &'l LabelReader<'a>, probe: &mut P) -> Result<(View<'l, 'a>, [u64; 9]), SchemeError> {
    let s = l.uints(0, probe)?;
    if s.count != 9 {
        return Err(SchemeError::Malformed("subsample scalars"));
    }
    let mut sc = [0u64; 9];
    for (i, v) in sc.iter_mut().enumerate() {
        *v = s.get(l.bits, i, probe)?;
    }
    let segs_k = read_segments(l, 3)?;
    let ends = l.uints(4, probe)?.read_all(l.bits)?;
    if ends.len() != 2 * segs_k.len() {
        return Err(SchemeError::Malformed("subsample endpoint distances"));
    }
    let v = View {
        l,
        dfs: sc[0] as usize,
        dfs_p: sc[1] as usize,
        root_dist: sc[2],
        root_dist_p: sc[3],
        dfs_k: sc[4] as usize,
        segs: read_segments(l, 1)?,
        segs_p: read_segments(l, 2)?,
        segs_k,
        ends,
    };
    Ok((v, sc))
}

fn is_ancestor(segs_a: &[Segment], dfs_a: usize, segs_b: &[Segment]) -> Result<bool, SchemeError> {
    if segs_a[0].first != segs_b[0].first {
        return Err(SchemeError::Malformed("segment lists from different trees"));
    }
    Ok(nca_from_segments(segs_a, segs_b) == dfs_a)
}

fn diff(a: u64, b: u64) -> Result<u64, SchemeError> {
    a.checked_sub(b).ok_or(SchemeError::Malformed("ancestor farther from the root"))
}

pub(crate) fn decode<P: Probe>(x: &LabelReader<'_>, y: &LabelReader<'_>, probe: &mut P) -> Result<u64, SchemeError> {
    let (mut vx, sc) = view(x, probe)?;
    let (mut vy, _) = view(y, probe)?;
    // Canonical order keeps the answer symmetric.
    if vx.dfs > vy.dfs {
        core::mem::swap(&mut vx, &mut vy);
    }
    let (nk, kw) = (sc[5] as usize, sc[6]);
    let alpha = Alphabet::new(sc[7], sc[8])?;

    if is_ancestor(&vx.segs, vx.dfs, &vy.segs)? {
        return diff(vy.root_dist, vx.root_dist);
    }
    if is_ancestor(&vy.segs, vy.dfs, &vx.segs)? {
        return diff(vx.root_dist, vy.root_dist);
    }
    if is_ancestor(&vx.segs_p, vx.dfs_p, &vy.segs)? {
        return Ok(kw + diff(vy.root_dist, vx.root_dist_p)?);
    }
    if is_ancestor(&vy.segs_p, vy.dfs_p, &vx.segs)? {
        return Ok(kw + diff(vx.root_dist, vy.root_dist_p)?);
    }

    if vx.dfs_k >= nk || vy.dfs_k >= nk || vx.segs_k[0].first != vy.segs_k[0].first {
        return Err(SchemeError::Malformed("T(k) segment lists"));
    }
    let z = nca_from_segments(&vx.segs_k, &vy.segs_k);
    for (a, b) in [(&vx, &vy), (&vy, &vx)] {
        let intervals: Vec<(usize, usize)> = path_below(&b.segs_k, z).collect();
        if !covered(&intervals, a.dfs_k, nk) {
            continue;
        }
        let to_z = dist_to_ancestor(&a.segs_k, &a.ends, a.root_dist, &b.segs_k, &b.ends, b.root_dist, z)?;
        let sum = window_sum(a.l, WINDOW, &alpha, &intervals, a.dfs_k, nk)?;
        let est = i64::try_from(kw).map_err(|_| SchemeError::Malformed("kW"))? + to_z + sum;
        return u64::try_from(est).map_err(|_| SchemeError::Malformed("negative distance"));
    }
    Err(SchemeError::Coverage)
}
