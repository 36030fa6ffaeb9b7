//! Bit strings, exact sequence packing and the constant-time query
//! structures that labels are assembled from.

mod bignum;
mod bits;
mod fixed;
mod packed;
mod prefix;
mod tables;

pub use bits::{push_varint, read_varint, BitString};
pub use fixed::FixedAccess;
pub use packed::{
    ceil_scaled_log2, decode_digits, decode_sequence, encode_digits, encode_sequence, packed_len, PackedSequence,
};
pub use prefix::{PrefixSum, PrefixView};
pub use tables::{build_micro_tables, fits_table_budget, MicroTables, TABLE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("value {value} outside [-{w}, {w}]")]
    ValueOutOfRange { value: i64, w: u32 },
    #[error("digit {digit} outside alphabet of size {sigma}")]
    DigitOutOfRange { digit: u64, sigma: u64 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("non-zero padding bits")]
    NonZeroPadding,
    #[error("packed value exceeds the alphabet range")]
    PackedValueTooLarge,
    #[error("micro tables for beta={beta}, W={w} need {entries} entries, over budget")]
    TableBudget { beta: usize, w: u32, entries: u64 },
    #[error("bad parameter: {0}")]
    BadParameter(&'static str),
}
