//! Heavy-path window scheme and its bipartite and reduced-alphabet variants.
//!
//! Nodes are numbered by a heavy-first DFS of a shortest-path tree `T`. The
//! label of `x` holds its heavy-path segments `ℓ_T(x)`, the distances from
//! `x` to each segment's endpoints, `dist(x, r)`, and the parent-edge deltas
//! of the `⌊n/2⌋` nodes following `x` cyclically in DFS order. For the
//! nearest common ancestor `z` of `x` and `y`,
//! `dist(x, y) = dist(x, z) + Σ_{v ∈ T(z, y]} δ_x(parent(v), v)`, and either
//! `x`'s window holds all of `T(z, y]` or `y`'s window holds all of `T(z, x]`.
//!
//! Fields: `[dfs, n, dist(x, r), R, D]`, segments, segment distances, window.

use alloc::vec::Vec;

use super::alphabet::{round_deltas, Alphabet};
use super::layout::{uint_array, LabelReader, UintArray};
use super::{Ctx, SchemeError, SchemeId};
use crate::codec::{decode_digits, encode_digits, packed_len, BitString};
use crate::graph::{DistanceOracle, WeightedGraph};
use crate::probe::Probe;
use crate::tree::{nca_from_segments, path_below, shortest_path_tree, HeavyLightDecomposition, Segment};

pub(crate) fn alphabet_for(ctx: &Ctx<'_>) -> Result<Alphabet, SchemeError> {
    match ctx.scheme {
        SchemeId::HeavypathBipartite => Alphabet::new(1, 1),
        SchemeId::ApproxWeights => Alphabet::new(u64::from(ctx.w), u64::from(ctx.params.d)),
        _ => Alphabet::new(u64::from(ctx.w), 0),
    }
}

/// Parent-edge deltas `δ_x(parent(v), v)` in a tree, 0 at the root.
pub(crate) fn parent_deltas(t: &crate::tree::RootedTree, dist_from_x: impl Fn(usize) -> u64) -> Vec<i64> {
    (0..t.n())
        .map(|v| match t.parent(v) {
            Some(p) => dist_from_x(v) as i64 - dist_from_x(p) as i64,
            None => 0,
        })
        .collect()
}

/// Alphabet index of every parent-edge delta for label owner `anchor`.
pub(crate) fn delta_digits(t: &crate::tree::RootedTree, delta: &[i64], alpha: &Alphabet, anchor: usize) -> Vec<u64> {
    if alpha.dropped == 0 {
        delta.iter().map(|&d| (d + alpha.radius as i64) as u64).collect()
    } else {
        round_deltas(t, delta, alpha, anchor)
    }
}

/// The `⌊n/2⌋` digits cyclically after DFS number `start`.
pub(crate) fn window(hld: &HeavyLightDecomposition, digits: &[u64], start: usize) -> Vec<u64> {
    let n = hld.n();
    (1..=n / 2).map(|s| digits[hld.by_dfs[(start + s) % n]]).collect()
}

pub(crate) fn segment_field(segs: &[Segment]) -> BitString {
    let flat: Vec<u64> = segs.iter().flat_map(|s| [s.first as u64, s.last as u64]).collect();
    uint_array(&flat)
}

pub(crate) fn read_segments(l: &LabelReader<'_>, field: usize) -> Result<Vec<Segment>, SchemeError> {
    let arr = l.uints(field, &mut crate::NoProbe)?;
    let flat = arr.read_all(l.bits)?;
    if flat.is_empty() || flat.len() % 2 != 0 {
        return Err(SchemeError::Malformed("segment list"));
    }
    Ok(flat.chunks(2).map(|c| Segment { first: c[0] as usize, last: c[1] as usize }).collect())
}

pub(crate) fn build(g: &WeightedGraph, oracle: &DistanceOracle, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    let n = g.n();
    let alpha = alphabet_for(ctx)?;
    let hld = HeavyLightDecomposition::new(shortest_path_tree(g, 0)?);
    let t = &hld.tree;
    (0..n)
        .map(|x| {
            let delta = parent_deltas(t, |v| oracle.dist(x, v));
            let digits = delta_digits(t, &delta, &alpha, x);
            let win = window(&hld, &digits, hld.dfs[x]);
            let dists: Vec<u64> = hld.segment_dists[x].iter().flat_map(|&(a, b)| [a, b]).collect();
            let mut wr = ctx.writer();
            wr.field(uint_array(&[hld.dfs[x] as u64, n as u64, oracle.dist(x, t.root()), alpha.radius, alpha.dropped]));
            wr.field(segment_field(&hld.segments[x]));
            wr.field(uint_array(&dists));
            wr.field(encode_digits(&win, alpha.size())?);
            Ok(wr.finish())
        })
        .collect()
}

/// Whether every interval lies inside the window of `⌊n/2⌋` DFS numbers
/// after `start`; on success the window offsets of each interval start.
pub(crate) fn covered(intervals: &[(usize, usize)], start: usize, n: usize) -> bool {
    intervals.iter().all(|&(lo, hi)| {
        let off = (lo + n - start) % n;
        off >= 1 && off + (hi - lo) <= n / 2
    })
}

/// Sum of the window values over the intervals (known to be covered).
pub(crate) fn window_sum(
    l: &LabelReader<'_>,
    field: usize,
    alpha: &Alphabet,
    intervals: &[(usize, usize)],
    start: usize,
    n: usize,
) -> Result<i64, SchemeError> {
    let half = n / 2;
    let bits = l.field_bits(field);
    if bits.len() != packed_len(half, alpha.size()) {
        return Err(SchemeError::Malformed("window has the wrong size"));
    }
    let digits = decode_digits(&bits, half, alpha.size())?;
    let mut sum = 0i64;
    for &(lo, hi) in intervals {
        let off = (lo + n - start) % n;
        for &d in &digits[off - 1..off + hi - lo] {
            sum += alpha.value(d);
        }
    }
    Ok(sum)
}

/// Distance from the owner of `a` to its ancestor with DFS number `z`,
/// where `z` ends a segment of `a` or of `b`.
pub(crate) fn dist_to_ancestor(
    segs_a: &[Segment],
    dists_a: &[u64],
    root_a: u64,
    segs_b: &[Segment],
    dists_b: &[u64],
    root_b: u64,
    z: usize,
) -> Result<i64, SchemeError> {
    if let Some(i) = segs_a.iter().position(|s| s.last == z) {
        return Ok(dists_a[2 * i + 1] as i64);
    }
    if let Some(i) = segs_b.iter().position(|s| s.last == z) {
        // dist(a, z) = dist(a, r) − dist(z, r) and dist(z, r) = dist(b, r) − dist(b, z).
        return Ok(root_a as i64 - root_b as i64 + dists_b[2 * i + 1] as i64);
    }
    Err(SchemeError::Malformed("common ancestor not found in either segment list"))
}

struct View<'l, 'a> {
    l: &'l LabelReader<'a>,
    dfs: usize,
    root_dist: u64,
    segs: Vec<Segment>,
    dists: Vec<u64>,
}

fn view<'l, 'a, P: Probe>(l: &'l LabelReader<'a>, s: &UintArray, probe: &mut P) -> Result<View<'l, 'a>, SchemeError> {
    let segs = read_segments(l, 1)?;
    let dists = l.uints(2, probe)?.read_all(l.bits)?;
    if dists.len() != 2 * segs.len() {
        return Err(SchemeError::Malformed("segment distances"));
    }
    Ok(View { l, dfs: s.get(l.bits, 0, probe)? as usize, root_dist: s.get(l.bits, 2, probe)?, segs, dists })
}

pub(crate) fn decode<P: Probe>(x: &LabelReader<'_>, y: &LabelReader<'_>, probe: &mut P) -> Result<u64, SchemeError> {
    let sx = x.uints(0, probe)?;
    let sy = y.uints(0, probe)?;
    let n = sx.get(x.bits, 1, probe)? as usize;
    let alpha = Alphabet::new(sx.get(x.bits, 3, probe)?, sx.get(x.bits, 4, probe)?)?;
    let mut vx = view(x, &sx, probe)?;
    let mut vy = view(y, &sy, probe)?;
    if vx.dfs == vy.dfs {
        return Ok(0);
    }
    // Canonical order keeps approximate answers symmetric.
    if vx.dfs > vy.dfs {
        core::mem::swap(&mut vx, &mut vy);
    }
    if vx.dfs >= n || vy.dfs >= n || vx.segs[0].first != vy.segs[0].first {
        return Err(SchemeError::Malformed("segment lists from different trees"));
    }
    let z = nca_from_segments(&vx.segs, &vy.segs);
    for (a, b) in [(&vx, &vy), (&vy, &vx)] {
        let intervals: Vec<(usize, usize)> = path_below(&b.segs, z).collect();
        if !covered(&intervals, a.dfs, n) {
            continue;
        }
        let to_z = dist_to_ancestor(&a.segs, &a.dists, a.root_dist, &b.segs, &b.dists, b.root_dist, z)?;
        let sum = window_sum(a.l, 3, &alpha, &intervals, a.dfs, n)?;
        return u64::try_from(to_z + sum).map_err(|_| SchemeError::Malformed("negative distance"));
    }
    Err(SchemeError::Coverage)
}
