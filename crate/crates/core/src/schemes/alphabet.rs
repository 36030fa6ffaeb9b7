//! Delta alphabets and the top-down rounding that keeps accumulated error
//! in `[0, Q]`.
//!
//! The alphabet `I′ ⊆ [−R, R]` keeps `2R + 1 − D` values including `±R`.
//! The `D` dropped values are spread over the `G = 2R − D` gaps between
//! kept neighbours: the first `D mod G` gaps lose `⌈D/G⌉` values, the rest
//! `⌊D/G⌋`. The largest run of dropped values is `Q = ⌈D/G⌉`.

use alloc::vec::Vec;

use super::SchemeError;
use crate::graph::NodeId;
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Alphabet {
    pub radius: u64,
    pub dropped: u64,
}

impl Alphabet {
    pub(crate) fn new(radius: u64, dropped: u64) -> Result<Self, SchemeError> {
        if radius == 0 {
            return Err(SchemeError::InvalidParams("delta range must be positive"));
        }
        if dropped > 2 * radius - 1 {
            return Err(SchemeError::InvalidParams("D must be at most 2W-1 for the delta range"));
        }
        Ok(Alphabet { radius, dropped })
    }

    pub(crate) fn size(&self) -> u64 {
        2 * self.radius + 1 - self.dropped
    }

    fn gaps(&self) -> u64 {
        2 * self.radius - self.dropped
    }

    /// Largest run of dropped values, `⌈D / (2R − D)⌉`.
    pub(crate) fn max_gap(&self) -> u64 {
        self.dropped.div_ceil(self.gaps())
    }

    /// Value of the `j`-th smallest kept element.
    #[inline]
    pub(crate) fn value(&self, j: u64) -> i64 {
        let g = self.gaps();
        let (base, extra) = (self.dropped / g, self.dropped % g);
        -(self.radius as i64) + (j + j * base + j.min(extra)) as i64
    }

    /// All kept values, ascending.
    pub(crate) fn values(&self) -> Vec<i64> {
        (0..self.size()).map(|j| self.value(j)).collect()
    }
}

/// Rounds every parent-edge delta of `t` into the alphabet, top-down,
/// keeping `A(v) = Σ(δ̃ − δ)` over the root path of `v` in `[0, Q]`.
///
/// `A` restarts at 0 on `anchor` and its ancestors, whose rounded values
/// are never read by a decoder working for `anchor`. Returns alphabet
/// indices per node (the root gets index 0).
pub(crate) fn round_deltas(t: &RootedTree, delta: &[i64], alpha: &Alphabet, anchor: NodeId) -> Vec<u64> {
    let values = alpha.values();
    let n = t.n();
    let mut on_anchor_path = alloc::vec![false; n];
    let mut u = anchor;
    loop {
        on_anchor_path[u] = true;
        match t.parent(u) {
            Some(p) => u = p,
            None => break,
        }
    }
    let mut acc = alloc::vec![0i64; n];
    let mut out = alloc::vec![0u64; n];
    for &v in t.bfs_order() {
        let Some(p) = t.parent(v) else { continue };
        let target = delta[v] - acc[p];
        // Smallest kept value ≥ target; −R if target is below the range.
        let j = values.partition_point(|&x| x < target).min(values.len() - 1);
        out[v] = j as u64;
        acc[v] = if on_anchor_path[v] { 0 } else { acc[p] + values[j] - delta[v] };
        debug_assert!(on_anchor_path[v] || (0..=alpha.max_gap() as i64).contains(&acc[v]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn spreads() {
        assert_eq!(Alphabet::new(3, 0).unwrap().values(), vec![-3, -2, -1, 0, 1, 2, 3]);
        let a = Alphabet::new(3, 3).unwrap();
        assert_eq!(a.values(), vec![-3, -1, 1, 3]);
        assert_eq!(a.max_gap(), 1);
        let a = Alphabet::new(3, 5).unwrap();
        assert_eq!(a.values(), vec![-3, 3]);
        assert_eq!(a.max_gap(), 5);
        let a = Alphabet::new(4, 5).unwrap();
        assert_eq!(a.values(), vec![-4, -1, 2, 4]);
        assert_eq!(a.max_gap(), 2);
        assert!(Alphabet::new(1, 2).is_err());
        assert_eq!(Alphabet::new(1, 1).unwrap().values(), vec![-1, 1]);
    }
}
