use alloc::vec;
use alloc::vec::Vec;

use super::CodecError;
use crate::probe::Probe;

/// Growable bit string. Bit `i` lives in word `i / 64` at position `i % 64`
/// (LSB-first), which serializes to LSB-first bytes. Bits past `len` are
/// always zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl core::fmt::Debug for BitString {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BitString({} bits: ", self.len)?;
        for i in 0..self.len.min(128) {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        if self.len > 128 {
            f.write_str("...")?;
        }
        f.write_str(")")
    }
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    /// Takes ownership of LSB-first words; bits at or past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        BitString { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {} out of range {}", i, self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn push_bit(&mut self, b: bool) {
        self.push_bits(u64::from(b), 1);
    }

    /// Appends the low `width` bits of `value` (LSB first).
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        if width == 0 {
            return;
        }
        let value = if width == 64 { value } else { value & ((1u64 << width) - 1) };
        let off = self.len % 64;
        if off == 0 {
            self.words.push(value);
        } else {
            let last = self.words.len() - 1;
            self.words[last] |= value << off;
            if off + width as usize > 64 {
                self.words.push(value >> (64 - off));
            }
        }
        self.len += width as usize;
    }

    pub fn append(&mut self, other: &BitString) {
        let full = other.len / 64;
        for &w in &other.words[..full] {
            self.push_bits(w, 64);
        }
        let rest = other.len % 64;
        if rest != 0 {
            self.push_bits(other.words[full], rest as u32);
        }
    }

    /// Reads `len ≤ 64` bits starting at `start` as an integer (bit `start`
    /// is the least significant). Panics when out of range.
    #[inline]
    pub fn read(&self, start: usize, len: u32) -> u64 {
        debug_assert!(len <= 64);
        assert!(start + len as usize <= self.len, "read past end of bit string");
        if len == 0 {
            return 0;
        }
        let wi = start / 64;
        let off = start % 64;
        let mut v = self.words[wi] >> off;
        if off + len as usize > 64 {
            v |= self.words[wi + 1] << (64 - off);
        }
        if len == 64 {
            v
        } else {
            v & ((1u64 << len) - 1)
        }
    }

    /// Checked, instrumented form of [`BitString::read`]: one step per call.
    pub fn word_extract<P: Probe>(&self, start: usize, len: u32, probe: &mut P) -> Result<u64, CodecError> {
        probe.step();
        if len > 64 || start.checked_add(len as usize).is_none_or(|e| e > self.len) {
            return Err(CodecError::IndexOutOfRange { index: start + len as usize, len: self.len });
        }
        Ok(self.read(start, len))
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitString {
        assert!(start + len <= self.len);
        let mut out = BitString::with_capacity(len);
        let mut i = 0;
        while i < len {
            let take = (len - i).min(64) as u32;
            out.push_bits(self.read(start + i, take), take);
            i += take as usize;
        }
        out
    }

    /// `⌈len / 8⌉` bytes, LSB-first within each byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for i in 0..nbytes {
            out.push((self.words[i / 8] >> ((i % 8) * 8)) as u8);
        }
        out
    }

    /// Inverse of [`BitString::to_bytes`]. Rejects a wrong byte count or
    /// non-zero padding.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self, CodecError> {
        if bytes.len() != len.div_ceil(8) {
            return Err(CodecError::LengthMismatch { expected: len.div_ceil(8), actual: bytes.len() });
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= u64::from(b) << ((i % 8) * 8);
        }
        if !len.is_multiple_of(8) && bytes[bytes.len() - 1] >> (len % 8) != 0 {
            return Err(CodecError::NonZeroPadding);
        }
        Ok(BitString { words, len })
    }
}

/// Self-delimiting unsigned integer: 7-bit width, then the value.
pub fn push_varint(bits: &mut BitString, value: u64) {
    let w = crate::bit_width(value);
    bits.push_bits(u64::from(w), 7);
    bits.push_bits(value, w);
}

/// Reads a value written by [`push_varint`]; returns it and the next offset.
#[inline]
pub fn read_varint<P: Probe>(bits: &BitString, at: usize, probe: &mut P) -> Result<(u64, usize), CodecError> {
    let w = bits.word_extract(at, 7, probe)? as u32;
    let v = bits.word_extract(at + 7, w, probe)?;
    Ok((v, at + 7 + w as usize))
}
