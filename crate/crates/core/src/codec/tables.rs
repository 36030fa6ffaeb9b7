//! Lookup tables that decode a micro-tree code and sum a masked subset of
//! its values with a constant number of reads.
//!
//! A code of `t ≤ β` values over `[−W, W]` (as written by
//! [`encode_digits`](super::encode_digits) after offsetting by `W`) is expanded by `inverse` into
//! a word holding one `fw`-bit two's-complement field per value, value 0 in
//! the lowest field. `expand` widens a `t`-bit mask into a field mask, and
//! `sums` adds up the fields of any masked word.

use alloc::vec;
use alloc::vec::Vec;

use super::packed::packed_len;
use super::CodecError;
use crate::probe::Probe;

/// Largest total entry count [`build_micro_tables`] accepts.
pub const TABLE_BUDGET: u64 = 1 << 26;

/// Codes must fit one machine word read.
const MAX_CODE_BITS: usize = 56;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroTables {
    pub beta: usize,
    pub w: u32,
    /// Field width in bits.
    pub fw: u32,
    /// `inverse[t][code]`: field word of the length-`t` sequence with that code.
    pub inverse: Vec<Vec<u64>>,
    /// `expand[mask]`: all-ones fields where `mask` has a bit.
    pub expand: Vec<u64>,
    /// `sums[word]`: sum of the signed fields of `word`.
    pub sums: Vec<i32>,
}

/// Entry count of the tables for `(β, W)`, or `None` on overflow.
fn table_entries(beta: usize, w: u32) -> Option<u64> {
    let sigma = 2 * u64::from(w) + 1;
    let fw = crate::ceil_log2(2 * u64::from(w) + 1).max(1);
    let mut total: u64 = 0;
    let mut p: u64 = 1;
    for _ in 0..=beta {
        total = total.checked_add(p)?;
        p = p.checked_mul(sigma)?;
    }
    let field_bits = u32::try_from(beta).ok()?.checked_mul(fw)?;
    total = total.checked_add(1u64.checked_shl(u32::try_from(beta).ok()?)?)?;
    total.checked_add(1u64.checked_shl(field_bits)?)
}

/// Whether [`build_micro_tables`] accepts `(β, W)`.
pub fn fits_table_budget(beta: usize, w: u32) -> bool {
    let sigma = 2 * u64::from(w) + 1;
    w > 0 && table_entries(beta, w).is_some_and(|e| e <= TABLE_BUDGET) && packed_len(beta, sigma) <= MAX_CODE_BITS
}

/// Builds the tables, refusing combinations over [`TABLE_BUDGET`] or with
/// codes longer than 56 bits.
pub fn build_micro_tables(beta: usize, w: u32) -> Result<MicroTables, CodecError> {
    if w == 0 {
        return Err(CodecError::BadParameter("W must be at least 1"));
    }
    let sigma = 2 * u64::from(w) + 1;
    if !fits_table_budget(beta, w) {
        let entries = table_entries(beta, w).unwrap_or(u64::MAX);
        return Err(CodecError::TableBudget { beta, w, entries });
    }
    let fw = crate::ceil_log2(sigma).max(1);
    let field_mask = (1u64 << fw) - 1;

    let mut inverse = Vec::with_capacity(beta + 1);
    let mut digits = Vec::with_capacity(beta);
    for t in 0..=beta {
        let count = sigma.pow(t as u32) as usize;
        let mut table = vec![0u64; count];
        digits.clear();
        digits.resize(t, 0u64);
        // The code of a sequence is its base-σ value, so counting through
        // codes in order enumerates sequences in order.
        for slot in table.iter_mut() {
            let mut word = 0u64;
            for (i, &d) in digits.iter().enumerate() {
                let v = d as i64 - i64::from(w);
                word |= ((v as u64) & field_mask) << (i as u32 * fw);
            }
            *slot = word;
            // Next sequence in base-σ counting order.
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < sigma {
                    break;
                }
                *d = 0;
            }
        }
        inverse.push(table);
    }

    let expand = (0..1u64 << beta)
        .map(|mask| (0..beta).filter(|&i| mask >> i & 1 == 1).fold(0u64, |acc, i| acc | field_mask << (i as u32 * fw)))
        .collect();

    let field_bits = beta as u32 * fw;
    let sums = (0..1u64 << field_bits)
        .map(|word| {
            (0..beta)
                .map(|i| {
                    let f = (word >> (i as u32 * fw)) & field_mask;
                    // Sign-extend the fw-bit field.
                    ((f << (64 - fw)) as i64 >> (64 - fw)) as i32
                })
                .sum()
        })
        .collect();

    Ok(MicroTables { beta, w, fw, inverse, expand, sums })
}

impl MicroTables {
    /// Total number of table entries.
    pub fn entries(&self) -> u64 {
        self.inverse.iter().map(|t| t.len() as u64).sum::<u64>() + self.expand.len() as u64 + self.sums.len() as u64
    }

    /// Code length for `t` values.
    pub fn code_len(&self, t: usize) -> usize {
        packed_len(t, 2 * u64::from(self.w) + 1)
    }

    /// Sum of the values at the mask's set bits in the length-`t` sequence
    /// with the given code. Four primitive steps.
    #[inline]
    pub fn sum_masked<P: Probe>(&self, code: u64, mask: u64, t: usize, probe: &mut P) -> Result<i64, CodecError> {
        if t > self.beta {
            return Err(CodecError::LengthMismatch { expected: self.beta, actual: t });
        }
        if mask >> t != 0 {
            return Err(CodecError::BadParameter("mask wider than sequence"));
        }
        probe.steps(4);
        let word = *self.inverse[t].get(code as usize).ok_or(CodecError::PackedValueTooLarge)?;
        Ok(i64::from(self.sums[(word & self.expand[mask as usize]) as usize]))
    }

    /// Fully decoded values of a code (test and debugging helper).
    pub fn decode(&self, code: u64, t: usize) -> Result<Vec<i64>, CodecError> {
        let word =
            *self.inverse.get(t).and_then(|tab| tab.get(code as usize)).ok_or(CodecError::PackedValueTooLarge)?;
        let fw = self.fw;
        Ok((0..t)
            .map(|i| {
                let f = (word >> (i as u32 * fw)) & ((1u64 << fw) - 1);
                (f << (64 - fw)) as i64 >> (64 - fw)
            })
            .collect())
    }
}
