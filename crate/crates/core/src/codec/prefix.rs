//! Constant-time prefix sums over small signed integers.
//!
//! Entries lie in `[−k, k]`. Every 64th prefix sum is stored absolutely (a
//! superblock total); every prefix sum is also stored relative to the
//! superblock it falls in, which needs only `⌈log₂(126k + 1)⌉` bits. A query
//! is one read from each array and an add. The encoding is self-delimiting
//! so a [`PrefixView`] can answer queries directly inside a label.

use alloc::vec::Vec;

use super::bits::{push_varint, read_varint};
use super::{BitString, CodecError};
use crate::probe::Probe;

const SUPER: usize = 64;

/// Owned prefix-sum structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSum {
    bits: BitString,
    view: PrefixView,
}

/// Parsed header of an encoded prefix-sum structure located inside some bit
/// string. Parsing reads a fixed number of fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixView {
    n: usize,
    super_bias: i64,
    rel_bias: i64,
    super_width: u32,
    rel_width: u32,
    super_at: usize,
    rel_at: usize,
    end: usize,
}

impl PrefixSum {
    pub fn build(entries: &[i64], k: u64) -> Result<Self, CodecError> {
        let n = entries.len();
        if entries.iter().any(|&e| e.unsigned_abs() > k) {
            return Err(CodecError::BadParameter("prefix entry outside [-k, k]"));
        }
        let k = k.max(1);
        let super_bias = (n as u64) * k;
        let super_width = crate::bit_width(2 * super_bias);
        let rel_bias = (SUPER as u64 - 1) * k;
        let rel_width = crate::bit_width(2 * rel_bias);

        let mut bits = BitString::new();
        push_varint(&mut bits, n as u64);
        push_varint(&mut bits, super_bias);
        push_varint(&mut bits, rel_bias);
        push_varint(&mut bits, u64::from(super_width));
        push_varint(&mut bits, u64::from(rel_width));
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = 0i64;
        prefix.push(0);
        for &e in entries {
            acc += e;
            prefix.push(acc);
        }
        for s in (0..=n).step_by(SUPER) {
            bits.push_bits((prefix[s] + super_bias as i64) as u64, super_width);
        }
        for (i, &p) in prefix.iter().enumerate() {
            let rel = p - prefix[i - i % SUPER];
            bits.push_bits((rel + rel_bias as i64) as u64, rel_width);
        }
        let view = PrefixView::parse(&bits, 0, &mut crate::NoProbe)?;
        Ok(PrefixSum { bits, view })
    }

    pub fn len(&self) -> usize {
        self.view.n
    }

    pub fn is_empty(&self) -> bool {
        self.view.n == 0
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn size_bits(&self) -> usize {
        self.bits.len()
    }

    /// `Σ_{j<i} entries[j]` for `0 ≤ i ≤ n`.
    pub fn query<P: Probe>(&self, i: usize, probe: &mut P) -> Result<i64, CodecError> {
        self.view.query(&self.bits, i, probe)
    }
}

impl PrefixView {
    pub fn parse<P: Probe>(bits: &BitString, at: usize, probe: &mut P) -> Result<Self, CodecError> {
        let (n, at) = read_varint(bits, at, probe)?;
        let (super_bias, at) = read_varint(bits, at, probe)?;
        let (rel_bias, at) = read_varint(bits, at, probe)?;
        let (super_width, at) = read_varint(bits, at, probe)?;
        let (rel_width, at) = read_varint(bits, at, probe)?;
        if super_width > 64 || rel_width > 64 || n > bits.len() as u64 {
            return Err(CodecError::BadParameter("corrupt prefix-sum header"));
        }
        let n = n as usize;
        let supers = n / SUPER + 1;
        let super_at = at;
        let rel_at = super_at + supers * super_width as usize;
        let end = rel_at + (n + 1) * rel_width as usize;
        if end > bits.len() {
            return Err(CodecError::IndexOutOfRange { index: end, len: bits.len() });
        }
        Ok(PrefixView {
            n,
            super_bias: super_bias as i64,
            rel_bias: rel_bias as i64,
            super_width: super_width as u32,
            rel_width: rel_width as u32,
            super_at,
            rel_at,
            end,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Offset just past the encoded structure.
    pub fn end(&self) -> usize {
        self.end
    }

    #[inline]
    pub fn query<P: Probe>(&self, bits: &BitString, i: usize, probe: &mut P) -> Result<i64, CodecError> {
        if i > self.n {
            return Err(CodecError::IndexOutOfRange { index: i, len: self.n + 1 });
        }
        let w = self.super_width as usize;
        let s = bits.word_extract(self.super_at + (i / SUPER) * w, self.super_width, probe)? as i64;
        let r = bits.word_extract(self.rel_at + i * self.rel_width as usize, self.rel_width, probe)? as i64;
        probe.step();
        Ok((s - self.super_bias) + (r - self.rel_bias))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::{NoProbe, StepCounter};

    #[test]
    fn small_examples() {
        let p = PrefixSum::build(&[1, -1, 1], 1).unwrap();
        assert_eq!(p.query(0, &mut NoProbe).unwrap(), 0);
        assert_eq!(p.query(2, &mut NoProbe).unwrap(), 0);
        assert_eq!(p.query(3, &mut NoProbe).unwrap(), 1);
        assert!(p.query(4, &mut NoProbe).is_err());
        let e = PrefixSum::build(&[], 3).unwrap();
        assert_eq!(e.query(0, &mut NoProbe).unwrap(), 0);
    }

    #[test]
    fn long_array_constant_steps() {
        let entries: Vec<i64> = (0..1000).map(|i| ((i * 37) % 9) as i64 - 4).collect();
        let p = PrefixSum::build(&entries, 4).unwrap();
        let mut acc = 0;
        for i in 0..=entries.len() {
            let mut c = StepCounter::new();
            assert_eq!(p.query(i, &mut c).unwrap(), acc);
            assert_eq!(c.count(), 3);
            if i < entries.len() {
                acc += entries[i];
            }
        }
        assert!(PrefixSum::build(&[5], 4).is_err());
    }
}
