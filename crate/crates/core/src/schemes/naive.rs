//! Distance table: each label stores the node's full row of distances.
//!
//! Fields: `[id, n, σ]` and the row as a [`FixedAccess`] table over
//! `σ = (n−1)W + 1`.

use alloc::vec::Vec;

use super::layout::{uint_array, LabelReader};
use super::{Ctx, SchemeError};
use crate::codec::FixedAccess;
use crate::graph::{DistanceOracle, WeightedGraph};
use crate::probe::Probe;

pub(crate) fn build(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    ctx: &Ctx<'_>,
) -> Result<Vec<crate::codec::BitString>, SchemeError> {
    let n = g.n();
    let sigma = (n as u64 - 1) * u64::from(ctx.w) + 1;
    (0..n)
        .map(|x| {
            let table = FixedAccess::build(oracle.row(x), sigma)?;
            let mut wr = ctx.writer();
            wr.field(uint_array(&[x as u64, n as u64, sigma]));
            wr.field(table.bits().clone());
            Ok(wr.finish())
        })
        .collect()
}

pub(crate) fn decode<P: Probe>(x: &LabelReader<'_>, y: &LabelReader<'_>, probe: &mut P) -> Result<u64, SchemeError> {
    let sx = x.uints(0, probe)?;
    let sy = y.uints(0, probe)?;
    let n = sx.get(x.bits, 1, probe)? as usize;
    let sigma = sx.get(x.bits, 2, probe)?;
    let id_y = sy.get(y.bits, 0, probe)? as usize;
    if id_y >= n {
        return Err(SchemeError::Malformed("node id outside the table"));
    }
    if FixedAccess::size_for(n, sigma)? != x.end(1) - x.start(1) {
        return Err(SchemeError::Malformed("distance table has the wrong size"));
    }
    Ok(FixedAccess::get_in(x.bits, x.start(1), n, sigma, id_y, probe)?)
}
