//! Constant-time decoding over a micro/macro decomposition.
//!
//! With `r` the root of a shortest-path tree and `MicroRoot(y)` the root of
//! `y`'s micro tree,
//! `dist(x, y) = dist(x, r) + δ_x(r, MicroRoot(y)) + δ_x(MicroRoot(y), y)`.
//! The macro sum comes from a prefix-sum structure over the macro walk
//! deltas in `x`'s label, indexed by `m(y)`. The micro sum is a masked sum
//! over the code of `δ_x(T*_{i(y)})`, which sits in `H(x)` or, with roles
//! swapped, the code of `δ_y(T*_{i(x)})` sits in `H(y)`.
//!
//! `D(x)` concatenates the codes of all micro trees; `H(x)` takes codes
//! cyclically from `i(x)` until it holds at least `⌈n/2⌉` deltas (or all of
//! them). Micro tree `j` is in `H(x)` iff `(a_j − a(x)) mod L < |H(x)|`.
//!
//! Fields: `[a, codelen, |H|, L, m, t, mask, dist(x, r), β, W]`, the macro
//! prefix sums, `H(x)`.

use alloc::vec::Vec;

use super::layout::{uint_array, LabelReader};
use super::{Ctx, LabelSet, SchemeError, SchemeId};
use crate::codec::{encode_digits, fits_table_budget, packed_len, BitString, MicroTables, PrefixSum, PrefixView};
use crate::graph::{DistanceOracle, WeightedGraph};
use crate::micro::MicroMacroDecomposition;
use crate::probe::Probe;
use crate::tree::shortest_path_tree;

const A: usize = 0;
const CODELEN: usize = 1;
const HLEN: usize = 2;
const L: usize = 3;
const M: usize = 4;
const T: usize = 5;
const MASK: usize = 6;
const DIST_R: usize = 7;
const BETA: usize = 8;
const W: usize = 9;

/// Default micro-tree size: `β = ⌊log₂ n / (2⌈log₂(2W+1)⌉)⌋` rounded down
/// to even, at least 2, and shrunk until the tables fit their budget and
/// every code fits 56 bits.
pub fn default_beta(n: usize, w: u32) -> usize {
    let f = crate::ceil_log2(2 * u64::from(w) + 1).max(1) as usize;
    let lg = (n.max(2)).ilog2() as usize;
    let mut beta = (lg / (2 * f)) & !1;
    beta = beta.max(2);
    while beta > 2 && !fits_table_budget(beta, w) {
        beta -= 2;
    }
    beta
}

pub(crate) fn build(g: &WeightedGraph, oracle: &DistanceOracle, ctx: &Ctx<'_>) -> Result<Vec<BitString>, SchemeError> {
    let n = g.n();
    let w = ctx.w;
    let beta = usize::from(ctx.params.beta);
    let tables = ctx.tables.ok_or(SchemeError::MissingTables)?;
    if tables.beta != beta || tables.w != w {
        return Err(SchemeError::TableMismatch { beta, w });
    }
    let t = shortest_path_tree(g, 0)?;
    let dec = MicroMacroDecomposition::new(&t, beta);
    let r = t.root();
    let sigma = 2 * u64::from(w) + 1;
    let parts = &dec.micro_trees;
    let lens: Vec<usize> = parts.iter().map(|p| packed_len(p.edges(), sigma)).collect();
    let mut starts = Vec::with_capacity(parts.len());
    let mut total = 0usize;
    for &l in &lens {
        starts.push(total);
        total += l;
    }
    let need = n.div_ceil(2).min(n - 1);
    let walk = &dec.macro_walk;

    (0..n)
        .map(|x| {
            let dx = |v: usize| oracle.dist(x, v) as i64;
            let codes: Vec<BitString> = parts
                .iter()
                .map(|p| {
                    let digits: Vec<u64> = p
                        .nodes
                        .iter()
                        .map(|&v| (dx(v) - dx(t.parent(v).expect("micro node has a parent")) + i64::from(w)) as u64)
                        .collect();
                    encode_digits(&digits, sigma)
                })
                .collect::<Result<_, _>>()?;
            let mut h = BitString::new();
            let ix = dec.micro_index[x];
            let mut covered = 0usize;
            let mut j = ix;
            for _ in 0..parts.len() {
                if covered >= need {
                    break;
                }
                h.append(&codes[j]);
                covered += parts[j].edges();
                j = (j + 1) % parts.len();
            }
            let entries: Vec<i64> = walk.windows(2).map(|s| dx(s[1]) - dx(s[0])).collect();
            let prefix = PrefixSum::build(&entries, (beta as u64) * u64::from(w))?;
            let (a, codelen, size) =
                if parts.is_empty() { (0, 0, 0) } else { (starts[ix], lens[ix], parts[ix].edges()) };
            let mut wr = ctx.writer();
            wr.field(uint_array(&[
                a as u64,
                codelen as u64,
                h.len() as u64,
                total as u64,
                dec.macro_index[x] as u64,
                size as u64,
                dec.path_mask(&t, x),
                oracle.dist(x, r),
                beta as u64,
                u64::from(w),
            ]));
            wr.field(prefix.bits().clone());
            wr.field(h);
            Ok(wr.finish())
        })
        .collect()
}

pub(crate) fn decode<P: Probe>(
    x: &LabelReader<'_>,
    y: &LabelReader<'_>,
    tables: &MicroTables,
    probe: &mut P,
) -> Result<u64, SchemeError> {
    let sx = x.uints(0, probe)?;
    let sy = y.uints(0, probe)?;
    if sx.count != 10 || sy.count != 10 {
        return Err(SchemeError::Malformed("constmicro scalars"));
    }
    let beta = sx.get(x.bits, BETA, probe)? as usize;
    let w = sx.get(x.bits, W, probe)? as u32;
    if beta != tables.beta || w != tables.w {
        return Err(SchemeError::TableMismatch { beta, w });
    }
    let l = sx.get(x.bits, L, probe)? as usize;
    if l == 0 {
        return Ok(0);
    }
    let ax = sx.get(x.bits, A, probe)? as usize;
    let ay = sy.get(y.bits, A, probe)? as usize;
    let hx = sx.get(x.bits, HLEN, probe)? as usize;
    let hy = sy.get(y.bits, HLEN, probe)? as usize;
    if ax >= l || ay >= l {
        return Err(SchemeError::Malformed("micro code position outside D(x)"));
    }
    // Both tests are evaluated so the step count does not depend on which one holds.
    let x_covers_y = (ay + l - ax) % l < hx;
    let y_covers_x = (ax + l - ay) % l < hy;
    probe.steps(2);
    let (a, sa, b, sb) = if x_covers_y {
        (x, &sx, y, &sy)
    } else if y_covers_x {
        (y, &sy, x, &sx)
    } else {
        return Err(SchemeError::Coverage);
    };
    let (pa, pb) = if x_covers_y { (ax, ay) } else { (ay, ax) };
    let ha = if x_covers_y { hx } else { hy };

    let s = (pb + l - pa) % l;
    let codelen = sb.get(b.bits, CODELEN, probe)? as usize;
    let tb = sb.get(b.bits, T, probe)? as usize;
    let mask = sb.get(b.bits, MASK, probe)?;
    let mb = sb.get(b.bits, M, probe)? as usize;
    if a.end(2) - a.start(2) != ha || s + codelen > ha || codelen > 64 {
        return Err(SchemeError::Malformed("H(x) does not hold the micro code"));
    }
    let code = a.bits.word_extract(a.start(2) + s, codelen as u32, probe)?;
    let micro = tables.sum_masked(code, mask, tb, probe)?;
    let view = PrefixView::parse(a.bits, a.start(1), probe)?;
    if view.end() != a.end(1) {
        return Err(SchemeError::Malformed("prefix-sum field size"));
    }
    let macro_sum = view.query(a.bits, mb, probe)?;
    let dist_r = sa.get(a.bits, DIST_R, probe)? as i64;
    probe.steps(2);
    u64::try_from(dist_r + macro_sum + micro).map_err(|_| SchemeError::Malformed("negative distance"))
}

/// Result of checking, for every ordered pair, that one of the two labels
/// holds the other node's micro code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CoverageStats {
    pub pairs: u64,
    pub violations: u64,
    /// Largest `|H(x)|` in bits.
    pub max_h_bits: u64,
    /// Total code length `L = |D(x)|`.
    pub d_bits: u64,
}

/// Coverage audit over a constmicro label set.
pub fn coverage_check(labels: &LabelSet) -> Result<CoverageStats, SchemeError> {
    if labels.scheme != SchemeId::Constmicro {
        return Err(SchemeError::InvalidParams("coverage audit needs constmicro labels"));
    }
    let mut probe = crate::NoProbe;
    let mut rows = Vec::with_capacity(labels.labels.len());
    for lab in &labels.labels {
        let r = LabelReader::parse(&lab.bits, &mut probe)?;
        let s = r.uints(0, &mut probe)?;
        rows.push((
            r.comp,
            s.get(r.bits, A, &mut probe)?,
            s.get(r.bits, HLEN, &mut probe)?,
            s.get(r.bits, L, &mut probe)?,
        ));
    }
    let mut stats = CoverageStats::default();
    for &(cx, ax, hx, lx) in &rows {
        stats.max_h_bits = stats.max_h_bits.max(hx);
        stats.d_bits = stats.d_bits.max(lx);
        for &(cy, ay, hy, _) in &rows {
            if cx != cy || lx == 0 {
                continue;
            }
            stats.pairs += 1;
            let ok = (ay + lx - ax) % lx < hx || (ax + lx - ay) % lx < hy;
            if !ok {
                stats.violations += 1;
            }
        }
    }
    Ok(stats)
}
