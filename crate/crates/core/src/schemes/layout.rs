//! Label framing: a fixed preamble with a field directory, followed by the
//! fields themselves.
//!
//! ```text
//! scheme:4 | cw:6 | component:cw | tag:16 | ow:6 | offset_0:ow … offset_{F−1}:ow | fields…
//! ```
//!
//! `F` is fixed per scheme, so any field is located with a constant number
//! of reads. Offsets are absolute bit positions inside the label.

use alloc::vec::Vec;

use super::{SchemeError, SchemeId};
use crate::codec::{push_varint, read_varint, BitString};
use crate::probe::Probe;

pub(crate) const MAX_FIELDS: usize = 8;

pub(crate) struct LabelWriter {
    scheme: SchemeId,
    comp: u64,
    comp_width: u32,
    tag: u16,
    fields: Vec<BitString>,
}

impl LabelWriter {
    pub(crate) fn new(scheme: SchemeId, comp: u64, comp_width: u32, tag: u16) -> Self {
        LabelWriter { scheme, comp, comp_width, tag, fields: Vec::with_capacity(MAX_FIELDS) }
    }

    pub(crate) fn field(&mut self, bits: BitString) -> &mut Self {
        self.fields.push(bits);
        self
    }

    pub(crate) fn finish(self) -> BitString {
        debug_assert_eq!(self.fields.len(), self.scheme.field_count());
        let payload: usize = self.fields.iter().map(BitString::len).sum();
        let fixed = 4 + 6 + self.comp_width as usize + 16 + 6;
        let nf = self.fields.len();
        let mut ow = 1u32;
        while crate::bit_width((fixed + nf * ow as usize + payload) as u64) > ow {
            ow += 1;
        }
        let header = fixed + nf * ow as usize;
        let mut out = BitString::with_capacity(header + payload);
        out.push_bits(self.scheme as u64, 4);
        out.push_bits(u64::from(self.comp_width), 6);
        out.push_bits(self.comp, self.comp_width);
        out.push_bits(u64::from(self.tag), 16);
        out.push_bits(u64::from(ow), 6);
        let mut at = header;
        for f in &self.fields {
            out.push_bits(at as u64, ow);
            at += f.len();
        }
        for f in &self.fields {
            out.append(f);
        }
        out
    }
}

/// Parsed preamble of a label.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LabelReader<'a> {
    pub bits: &'a BitString,
    pub scheme: SchemeId,
    pub comp: u64,
    pub tag: u16,
    offsets: [usize; MAX_FIELDS],
    nf: usize,
}

impl<'a> LabelReader<'a> {
    #[inline]
    pub(crate) fn parse<P: Probe>(bits: &'a BitString, probe: &mut P) -> Result<Self, SchemeError> {
        let id = bits.word_extract(0, 4, probe)? as u8;
        let scheme = SchemeId::from_u8(id).ok_or(SchemeError::UnknownScheme(id))?;
        let cw = bits.word_extract(4, 6, probe)? as u32;
        let comp = bits.word_extract(10, cw, probe)?;
        let mut at = 10 + cw as usize;
        let tag = bits.word_extract(at, 16, probe)? as u16;
        at += 16;
        let ow = bits.word_extract(at, 6, probe)? as u32;
        at += 6;
        let nf = scheme.field_count();
        let mut offsets = [0usize; MAX_FIELDS];
        for slot in offsets.iter_mut().take(nf) {
            *slot = bits.word_extract(at, ow, probe)? as usize;
            at += ow as usize;
        }
        if offsets[..nf].windows(2).any(|w| w[0] > w[1]) || nf > 0 && offsets[nf - 1] > bits.len() {
            return Err(SchemeError::Malformed("field directory out of order"));
        }
        if nf > 0 && offsets[0] != at {
            return Err(SchemeError::Malformed("field directory does not match header"));
        }
        Ok(LabelReader { bits, scheme, comp, tag, offsets, nf })
    }

    #[inline]
    pub(crate) fn start(&self, i: usize) -> usize {
        self.offsets[i]
    }

    #[inline]
    pub(crate) fn end(&self, i: usize) -> usize {
        if i + 1 < self.nf {
            self.offsets[i + 1]
        } else {
            self.bits.len()
        }
    }

    pub(crate) fn field_bits(&self, i: usize) -> BitString {
        self.bits.slice(self.start(i), self.end(i) - self.start(i))
    }

    #[inline]
    pub(crate) fn uints<P: Probe>(&self, i: usize, probe: &mut P) -> Result<UintArray, SchemeError> {
        UintArray::parse(self.bits, self.start(i), self.end(i), probe)
    }
}

/// Array of unsigned integers at a common width: `width:7 | count:varint | values`.
pub(crate) fn uint_array(values: &[u64]) -> BitString {
    let width = values.iter().map(|&v| crate::bit_width(v)).max().unwrap_or(0);
    let mut out = BitString::with_capacity(7 + 71 + values.len() * width as usize);
    out.push_bits(u64::from(width), 7);
    push_varint(&mut out, values.len() as u64);
    for &v in values {
        out.push_bits(v, width);
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct UintArray {
    at: usize,
    width: u32,
    pub count: usize,
}

impl UintArray {
    #[inline]
    pub(crate) fn parse<P: Probe>(bits: &BitString, at: usize, end: usize, probe: &mut P) -> Result<Self, SchemeError> {
        let width = bits.word_extract(at, 7, probe)? as u32;
        let (count, at) = read_varint(bits, at + 7, probe)?;
        let fits = usize::try_from(count)
            .ok()
            .and_then(|c| c.checked_mul(width as usize))
            .and_then(|b| b.checked_add(at))
            .is_some_and(|e| e <= end);
        if width > 64 || !fits || (width == 0 && count > 1 << 24) {
            return Err(SchemeError::Malformed("integer array header"));
        }
        let count = count as usize;
        Ok(UintArray { at, width, count })
    }

    #[inline]
    pub(crate) fn get<P: Probe>(&self, bits: &BitString, i: usize, probe: &mut P) -> Result<u64, SchemeError> {
        if i >= self.count {
            return Err(SchemeError::Malformed("integer array index out of range"));
        }
        Ok(bits.word_extract(self.at + i * self.width as usize, self.width, probe)?)
    }

    pub(crate) fn read_all(&self, bits: &BitString) -> Result<Vec<u64>, SchemeError> {
        (0..self.count).map(|i| self.get(bits, i, &mut crate::NoProbe)).collect()
    }
}
