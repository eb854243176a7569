//! Small integer helpers shared across modules.

use crate::error::{RingError, Result};

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Splits `q` as `p^s`, or explains why it cannot be.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let f = factorize(q);
    match f.as_slice() {
        [(p, s)] => Ok((*p, *s)),
        [] => Err(RingError::NotPrimePower(format!(
            "{q} is not a prime power"
        ))),
        many => {
            let parts: Vec<String> = many
                .iter()
                .flat_map(|&(p, e)| std::iter::repeat_n(p.to_string(), e as usize))
                .collect();
            Err(RingError::NotPrimePower(format!(
                "{q} = {} is not a prime power",
                parts.join("·")
            )))
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `n`, when `gcd(a, n) = 1`.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}
