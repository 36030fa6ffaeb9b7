//! Closed-walk scheme over the Euler tour of a shortest-path tree.
//!
//! With the tour `v_0 … v_{h−1}` (`h = 2n − 2`), the label of `x = v_i`
//! stores `i`, `h`, `W` and the `⌊h/2⌋` deltas `δ_x(v_k, v_{k+1})` for
//! `k = i … i + ⌊h/2⌋ − 1 (mod h)`. Whichever endpoint reaches the other
//! within half a tour sums its deltas.

use alloc::vec::Vec;

use super::layout::{uint_array, LabelReader};
use super::{Ctx, SchemeError};
use crate::codec::{decode_digits, encode_digits, packed_len, BitString};
use crate::graph::{DistanceOracle, NodeId, WeightedGraph};
use crate::probe::Probe;
use crate::tree::shortest_path_tree;

/// Closed Euler tour of the shortest-path tree rooted at node 0, without the
/// final return to the root (`2n − 2` entries, or `[0]` when `n = 1`).
pub fn euler_walk(g: &WeightedGraph) -> Result<Vec<NodeId>, SchemeError> {
    let t = shortest_path_tree(g, 0)?;
    let children: Vec<Vec<NodeId>> = (0..t.n()).map(|v| t.children(v).to_vec()).collect();
    let mut walk = crate::micro::euler_tour(t.root(), &children);
    if walk.len() > 1 {
        walk.pop();
    }
    Ok(walk)
}

pub(crate) fn build(g: &WeightedGraph, oracle: &DistanceOracle, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    let n = g.n();
    let walk = euler_walk(g)?;
    let h = if n == 1 { 0 } else { walk.len() };
    let half = h / 2;
    let w = ctx.w;
    let sigma = 2 * u64::from(w) + 1;
    let mut first = alloc::vec![usize::MAX; n];
    for (i, &v) in walk.iter().enumerate() {
        if first[v] == usize::MAX {
            first[v] = i;
        }
    }
    (0..n)
        .map(|x| {
            let i = first[x];
            let digits: Vec<u64> = (0..half)
                .map(|s| {
                    let a = walk[(i + s) % h];
                    let b = walk[(i + s + 1) % h];
                    (oracle.delta(x, a, b) + i64::from(w)) as u64
                })
                .collect();
            let mut wr = ctx.writer();
            wr.field(uint_array(&[i as u64, h as u64, u64::from(w)]));
            wr.field(encode_digits(&digits, sigma)?);
            Ok(wr.finish())
        })
        .collect()
}

fn sum_prefix(l: &LabelReader<'_>, h: usize, w: u64, count: usize) -> Result<u64, SchemeError> {
    let half = h / 2;
    let sigma = 2 * w + 1;
    let bits = l.field_bits(1);
    if bits.len() != packed_len(half, sigma) {
        return Err(SchemeError::Malformed("walk deltas have the wrong size"));
    }
    let digits = decode_digits(&bits, half, sigma)?;
    let total: i64 = digits[..count].iter().map(|&d| d as i64 - w as i64).sum();
    u64::try_from(total).map_err(|_| SchemeError::Malformed("negative distance"))
}

pub(crate) fn decode<P: Probe>(x: &LabelReader<'_>, y: &LabelReader<'_>, probe: &mut P) -> Result<u64, SchemeError> {
    let sx = x.uints(0, probe)?;
    let sy = y.uints(0, probe)?;
    let (ix, h, w) =
        (sx.get(x.bits, 0, probe)? as usize, sx.get(x.bits, 1, probe)? as usize, sx.get(x.bits, 2, probe)?);
    let iy = sy.get(y.bits, 0, probe)? as usize;
    if h == 0 {
        return Ok(0);
    }
    if ix >= h || iy >= h {
        return Err(SchemeError::Malformed("walk index out of range"));
    }
    let forward = (iy + h - ix) % h;
    if forward <= h / 2 {
        sum_prefix(x, h, w, forward)
    } else {
        sum_prefix(y, h, w, h - forward)
    }
}
