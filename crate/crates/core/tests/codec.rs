use distlab_core::codec::{
    build_micro_tables, decode_digits, decode_sequence, encode_digits, encode_sequence, packed_len, FixedAccess,
    PrefixSum,
};
use distlab_core::gen::SplitMix64;
use distlab_core::{NoProbe, StepCounter};
use proptest::prelude::*;

/// Smallest `b` with `2^b ≥ σ^t`, by repeated multiplication in u128.
fn ceil_bits(t: usize, sigma: u64) -> usize {
    let target = (0..t).fold(1u128, |p, _| p * u128::from(sigma));
    let mut b = 0;
    while (1u128 << b) < target {
        b += 1;
    }
    b
}

/// Every sequence of length `t` over `[0, σ)` in counting order.
fn all_sequences(t: usize, sigma: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = sigma.pow(t as u32);
    (0..count).map(move |mut c| {
        let mut d = vec![0u64; t];
        for slot in d.iter_mut().rev() {
            *slot = c % sigma;
            c /= sigma;
        }
        d
    })
}

#[test]
fn exhaustive_roundtrip_small() {
    for w in 1..=2u32 {
        let sigma = 2 * u64::from(w) + 1;
        for t in 0..=8 {
            let len = ceil_bits(t, sigma);
            assert_eq!(packed_len(t, sigma), len);
            for digits in all_sequences(t, sigma) {
                let bits = encode_digits(&digits, sigma).unwrap();
                assert_eq!(bits.len(), len);
                assert_eq!(decode_digits(&bits, t, sigma).unwrap(), digits);
            }
        }
    }
}

#[test]
fn packed_length_matches_ceiling() {
    for sigma in 2..=40u64 {
        for t in 0..=20 {
            if (t as f64) * (sigma as f64).log2() < 120.0 {
                assert_eq!(packed_len(t, sigma), ceil_bits(t, sigma), "t={t} sigma={sigma}");
            }
        }
    }
    assert_eq!(packed_len(512, 3), 812);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sequence_roundtrip(w in 1u32..=20, values in proptest::collection::vec(-20i64..=20, 0..60)) {
        let values: Vec<i64> = values.into_iter().map(|v| v.clamp(-i64::from(w), i64::from(w))).collect();
        let p = encode_sequence(&values, w).unwrap();
        let sigma = 2 * u64::from(w) + 1;
        prop_assert_eq!(p.bits.len(), packed_len(values.len(), sigma));
        prop_assert_eq!(decode_sequence(&p).unwrap(), values);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn long_sequences_roundtrip(sigma in 2u64..1000, digits in proptest::collection::vec(any::<u64>(), 0..400)) {
        let digits: Vec<u64> = digits.into_iter().map(|d| d % sigma).collect();
        let bits = encode_digits(&digits, sigma).unwrap();
        prop_assert_eq!(bits.len(), packed_len(digits.len(), sigma));
        prop_assert_eq!(decode_digits(&bits, digits.len(), sigma).unwrap(), digits);
    }

    #[test]
    fn fixed_access_reads_every_entry(sigma in 1u64..5000, values in proptest::collection::vec(any::<u64>(), 0..300)) {
        let values: Vec<u64> = values.into_iter().map(|v| v % sigma).collect();
        let f = FixedAccess::build(&values, sigma).unwrap();
        prop_assert_eq!(f.size_bits(), FixedAccess::size_for(values.len(), sigma).unwrap());
        for (i, &v) in values.iter().enumerate() {
            let mut c = StepCounter::new();
            prop_assert_eq!(f.get(i, &mut c).unwrap(), v);
            prop_assert!(c.count() <= 3);
        }
    }
}

#[test]
fn prefix_sums_match_naive() {
    let mut rng = SplitMix64::new(42);
    for case in 0..1000 {
        let k = 1 + rng.below(if case % 2 == 0 { 3 } else { 200 });
        let n = rng.below(400) as usize;
        let entries: Vec<i64> = (0..n).map(|_| rng.below(2 * k + 1) as i64 - k as i64).collect();
        let p = PrefixSum::build(&entries, k).unwrap();
        let mut acc = 0i64;
        for i in 0..=n {
            let mut c = StepCounter::new();
            assert_eq!(p.query(i, &mut c).unwrap(), acc, "case {case} index {i}");
            assert_eq!(c.count(), 3);
            if i < n {
                acc += entries[i];
            }
        }
        assert!(p.query(n + 1, &mut NoProbe).is_err());
    }
}

#[test]
fn masked_sums_match_decode_then_sum() {
    for w in 1..=2u32 {
        let sigma = 2 * u64::from(w) + 1;
        for beta in 1..=6usize {
            let tables = build_micro_tables(beta, w).unwrap();
            for t in 0..=beta {
                for digits in all_sequences(t, sigma) {
                    let code = encode_digits(&digits, sigma).unwrap().read(0, packed_len(t, sigma) as u32);
                    let values: Vec<i64> = digits.iter().map(|&d| d as i64 - i64::from(w)).collect();
                    assert_eq!(tables.decode(code, t).unwrap(), values);
                    for mask in 0..(1u64 << t) {
                        let want: i64 = (0..t).filter(|&i| mask >> i & 1 == 1).map(|i| values[i]).sum();
                        let mut c = StepCounter::new();
                        assert_eq!(tables.sum_masked(code, mask, t, &mut c).unwrap(), want);
                        assert_eq!(c.count(), 4);
                    }
                }
            }
        }
    }
}

#[test]
fn table_budget_is_enforced() {
    assert!(build_micro_tables(40, 1).is_err());
    assert!(build_micro_tables(4, 0).is_err());
    let t = build_micro_tables(6, 1).unwrap();
    assert!(t.entries() <= distlab_core::codec::TABLE_BUDGET);
}
