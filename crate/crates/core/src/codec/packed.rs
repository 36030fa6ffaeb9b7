//! Exact mixed-radix packing: `t` symbols from an alphabet of size `σ` in
//! exactly `⌈t·log₂ σ⌉` bits.
//!
//! The sequence is read as a base-`σ` number with the first symbol most
//! significant. The number is written LSB-first into the smallest bit count
//! `b` with `2^b ≥ σ^t`.

use alloc::vec;
use alloc::vec::Vec;

use super::bignum::{chunk, pow, BigUint};
use super::{BitString, CodecError};

/// `⌈t·log₂ σ⌉`, computed exactly as the smallest `b` with `2^b ≥ σ^t`.
pub fn packed_len(t: usize, sigma: u64) -> usize {
    assert!(sigma >= 1, "alphabet must be non-empty");
    if t == 0 || sigma == 1 {
        return 0;
    }
    let mut p = pow(sigma, t);
    p.decrement();
    p.bit_len()
}

/// `⌈(num/den)·log₂ σ⌉`: smallest `b` with `2^(b·den) ≥ σ^num`.
pub fn ceil_scaled_log2(num: usize, den: usize, sigma: u64) -> usize {
    assert!(den >= 1);
    if num == 0 || sigma <= 1 {
        return 0;
    }
    let l = packed_len(num, sigma);
    // b·den ≥ l exactly when 2^(b·den) ≥ σ^num, since l is that minimum.
    l.div_ceil(den)
}

/// Packs digits in `[0, σ)`, first digit most significant.
pub fn encode_digits(digits: &[u64], sigma: u64) -> Result<BitString, CodecError> {
    if let Some(&d) = digits.iter().find(|&&d| d >= sigma) {
        return Err(CodecError::DigitOutOfRange { digit: d, sigma });
    }
    let len = packed_len(digits.len(), sigma);
    if len == 0 {
        return Ok(BitString::new());
    }
    let (c, pc) = chunk(sigma);
    let mut acc = BigUint::from_u64(0);
    let mut i = 0;
    while i < digits.len() {
        let take = c.min(digits.len() - i);
        let mult = if take == c { pc } else { sigma.pow(take as u32) };
        let mut v = 0u64;
        for &d in &digits[i..i + take] {
            v = v * sigma + d;
        }
        acc.mul_add(mult, v);
        i += take;
    }
    Ok(BitString::from_words(acc.limbs, len))
}

/// Inverse of [`encode_digits`] for a known count `t`.
pub fn decode_digits(bits: &BitString, t: usize, sigma: u64) -> Result<Vec<u64>, CodecError> {
    let expected = packed_len(t, sigma);
    if bits.len() != expected {
        return Err(CodecError::LengthMismatch { expected, actual: bits.len() });
    }
    let mut out = vec![0u64; t];
    if expected == 0 {
        return Ok(out);
    }
    let (c, pc) = chunk(sigma);
    let mut acc = BigUint::from_limbs(bits.words().to_vec());
    let mut end = t;
    while end > 0 {
        let take = c.min(end);
        let div = if take == c { pc } else { sigma.pow(take as u32) };
        let mut r = acc.div_rem(div);
        for slot in out[end - take..end].iter_mut().rev() {
            *slot = r % sigma;
            r /= sigma;
        }
        end -= take;
    }
    if !acc.is_zero() {
        return Err(CodecError::PackedValueTooLarge);
    }
    Ok(out)
}

/// `t` integers over `[−W, W]` packed with `σ = 2W + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedSequence {
    pub t: usize,
    pub sigma: u64,
    pub bits: BitString,
}

/// Packs values in `[−w, w]` (offset by `+w`) into `⌈t·log₂(2w+1)⌉` bits.
pub fn encode_sequence(values: &[i64], w: u32) -> Result<PackedSequence, CodecError> {
    let w64 = i64::from(w);
    let digits =
        values
            .iter()
            .map(|&v| {
                if v < -w64 || v > w64 {
                    Err(CodecError::ValueOutOfRange { value: v, w })
                } else {
                    Ok((v + w64) as u64)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
    let sigma = 2 * u64::from(w) + 1;
    Ok(PackedSequence { t: values.len(), sigma, bits: encode_digits(&digits, sigma)? })
}

pub fn decode_sequence(p: &PackedSequence) -> Result<Vec<i64>, CodecError> {
    if p.sigma.is_multiple_of(2) {
        return Err(CodecError::BadParameter("sequence alphabet must be odd"));
    }
    let w = (p.sigma / 2) as i64;
    Ok(decode_digits(&p.bits, p.t, p.sigma)?.into_iter().map(|d| d as i64 - w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_base_three() {
        let p = encode_sequence(&[-1, 0, 1], 1).unwrap();
        assert_eq!(p.bits.len(), 5);
        assert_eq!(p.bits.read(0, 5), 5);
        assert_eq!(decode_sequence(&p).unwrap(), vec![-1, 0, 1]);
    }

    #[test]
    fn empty_sequence() {
        let p = encode_sequence(&[], 3).unwrap();
        assert!(p.bits.is_empty());
        assert_eq!(decode_sequence(&p).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn packed_lengths() {
        assert_eq!(packed_len(3, 3), 5);
        assert_eq!(packed_len(1, 3), 2);
        assert_eq!(packed_len(40, 3), 64);
        assert_eq!(packed_len(41, 3), 65);
        assert_eq!(packed_len(7, 2), 7);
        assert_eq!(packed_len(5, 1), 0);
        // ⌈512·log₂3⌉ = ⌈811.49⌉
        assert_eq!(packed_len(512, 3), 812);
        assert_eq!(ceil_scaled_log2(1024, 2, 3), 812);
        assert_eq!(ceil_scaled_log2(3, 2, 3), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(encode_sequence(&[2], 1), Err(CodecError::ValueOutOfRange { .. })));
        let p = encode_sequence(&[1, 1], 1).unwrap();
        assert!(decode_digits(&p.bits, 3, 3).is_err());
        // 5 bits can hold 31 > 3^3 - 1.
        let mut b = BitString::new();
        b.push_bits(31, 5);
        assert_eq!(decode_digits(&b, 3, 3), Err(CodecError::PackedValueTooLarge));
    }
}
