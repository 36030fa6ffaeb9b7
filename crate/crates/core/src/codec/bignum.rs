//! Minimal unsigned big integers for mixed-radix packing. Limbs are
//! little-endian `u64`s, which are also the LSB-first words of a
//! [`BitString`](super::BitString).

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BigUint {
    pub(crate) limbs: Vec<u64>,
}

impl BigUint {
    pub(crate) fn from_u64(v: u64) -> Self {
        BigUint { limbs: vec![v] }
    }

    pub(crate) fn from_limbs(limbs: Vec<u64>) -> Self {
        BigUint { limbs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// `self = self * m + a`.
    pub(crate) fn mul_add(&mut self, m: u64, a: u64) {
        let mut carry = u128::from(a);
        for l in &mut self.limbs {
            let t = u128::from(*l) * u128::from(m) + carry;
            *l = t as u64;
            carry = t >> 64;
        }
        if carry != 0 {
            self.limbs.push(carry as u64);
        }
    }

    /// `self /= d`, returning the remainder.
    pub(crate) fn div_rem(&mut self, d: u64) -> u64 {
        let mut rem = 0u128;
        for l in self.limbs.iter_mut().rev() {
            let cur = (rem << 64) | u128::from(*l);
            *l = (cur / u128::from(d)) as u64;
            rem = cur % u128::from(d);
        }
        while self.limbs.len() > 1 && *self.limbs.last().unwrap() == 0 {
            self.limbs.pop();
        }
        rem as u64
    }

    /// `self -= 1`; `self` must be non-zero.
    pub(crate) fn decrement(&mut self) {
        for l in &mut self.limbs {
            if *l == 0 {
                *l = u64::MAX;
            } else {
                *l -= 1;
                return;
            }
        }
        unreachable!("decrement of zero");
    }

    pub(crate) fn bit_len(&self) -> usize {
        for (i, &l) in self.limbs.iter().enumerate().rev() {
            if l != 0 {
                return i * 64 + (64 - l.leading_zeros() as usize);
            }
        }
        0
    }
}

/// Largest `c ≥ 1` with `sigma^c` fitting in a `u64`, and that power.
pub(crate) fn chunk(sigma: u64) -> (usize, u64) {
    debug_assert!(sigma >= 2);
    let mut c = 1;
    let mut p = sigma;
    while let Some(q) = p.checked_mul(sigma) {
        p = q;
        c += 1;
    }
    (c, p)
}

pub(crate) fn pow(sigma: u64, t: usize) -> BigUint {
    let mut acc = BigUint::from_u64(1);
    if t == 0 {
        return acc;
    }
    let (c, pc) = chunk(sigma);
    let mut left = t;
    while left >= c {
        acc.mul_add(pc, 0);
        left -= c;
    }
    acc.mul_add(sigma.pow(left as u32), 0);
    acc
}
