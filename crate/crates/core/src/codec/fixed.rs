//! Random access to a table of symbols from `[0, σ)`.
//!
//! When `σ` is a power of two each symbol gets its own `log₂ σ`-bit field.
//! Otherwise symbols are grouped into blocks of `b = ⌊64 / ⌈log₂ σ⌉⌋`, and
//! each block is packed exactly (see [`encode_digits`]) into at most 64 bits,
//! so one word read plus one division recovers any symbol. The last block
//! only holds the symbols that remain.

use alloc::vec::Vec;

use super::packed::{encode_digits, packed_len};
use super::{BitString, CodecError};
use crate::probe::Probe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Layout {
    n: usize,
    sigma: u64,
    /// Symbols per block (1 with plain fields).
    per_block: usize,
    /// Bits per full block.
    block_bits: u32,
    plain: bool,
}

impl Layout {
    fn new(n: usize, sigma: u64) -> Result<Self, CodecError> {
        if sigma == 0 {
            return Err(CodecError::BadParameter("alphabet must be non-empty"));
        }
        if sigma.is_power_of_two() {
            let w = sigma.trailing_zeros();
            return Ok(Layout { n, sigma, per_block: 1, block_bits: w, plain: true });
        }
        let w = crate::ceil_log2(sigma);
        let per_block = (64 / w) as usize;
        let block_bits = packed_len(per_block, sigma) as u32;
        Ok(Layout { n, sigma, per_block, block_bits, plain: false })
    }

    fn total_bits(&self) -> usize {
        let full = self.n / self.per_block;
        let rest = self.n % self.per_block;
        full * self.block_bits as usize + if rest > 0 { packed_len(rest, self.sigma) } else { 0 }
    }

    #[inline]
    fn get<P: Probe>(&self, bits: &BitString, base: usize, i: usize, probe: &mut P) -> Result<u64, CodecError> {
        if i >= self.n {
            return Err(CodecError::IndexOutOfRange { index: i, len: self.n });
        }
        if self.plain {
            return bits.word_extract(base + i * self.block_bits as usize, self.block_bits, probe);
        }
        probe.step();
        let block = i / self.per_block;
        let j = i % self.per_block;
        let count = self.per_block.min(self.n - block * self.per_block);
        let len = if count == self.per_block { self.block_bits } else { packed_len(count, self.sigma) as u32 };
        let word = bits.word_extract(base + block * self.block_bits as usize, len, probe)?;
        probe.step();
        // count ≤ 64 / ⌈log₂ σ⌉, so this power fits in a word.
        let div = self.sigma.pow((count - 1 - j) as u32);
        Ok((word / div) % self.sigma)
    }
}

/// Read-only table of `n` symbols over `[0, σ)` with constant-time access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedAccess {
    layout: Layout,
    bits: BitString,
}

impl FixedAccess {
    pub fn build(values: &[u64], sigma: u64) -> Result<Self, CodecError> {
        let layout = Layout::new(values.len(), sigma)?;
        let mut bits = BitString::with_capacity(layout.total_bits());
        if layout.plain {
            for &v in values {
                if v >= sigma {
                    return Err(CodecError::DigitOutOfRange { digit: v, sigma });
                }
                bits.push_bits(v, layout.block_bits);
            }
        } else {
            for chunk in values.chunks(layout.per_block) {
                bits.append(&encode_digits(chunk, sigma)?);
            }
        }
        debug_assert_eq!(bits.len(), layout.total_bits());
        Ok(FixedAccess { layout, bits })
    }

    pub fn len(&self) -> usize {
        self.layout.n
    }

    pub fn is_empty(&self) -> bool {
        self.layout.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.layout.sigma
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    /// Payload size in bits.
    pub fn size_bits(&self) -> usize {
        self.bits.len()
    }

    /// Payload size for `n` symbols over `σ`, without building.
    pub fn size_for(n: usize, sigma: u64) -> Result<usize, CodecError> {
        Ok(Layout::new(n, sigma)?.total_bits())
    }

    pub fn get<P: Probe>(&self, i: usize, probe: &mut P) -> Result<u64, CodecError> {
        self.layout.get(&self.bits, 0, i, probe)
    }

    /// Reads symbol `i` of a payload written at `base` inside `bits`.
    pub fn get_in<P: Probe>(
        bits: &BitString,
        base: usize,
        n: usize,
        sigma: u64,
        i: usize,
        probe: &mut P,
    ) -> Result<u64, CodecError> {
        Layout::new(n, sigma)?.get(bits, base, i, probe)
    }

    /// Decodes every symbol (for tests and dumps).
    pub fn to_vec(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.get(i, &mut crate::NoProbe).expect("in range")).collect()
    }
}
