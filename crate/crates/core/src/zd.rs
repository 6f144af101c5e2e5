//! Arithmetic helpers for the ring Z_d and base-d counters.

use crate::error::{Error, Result};

pub fn check_modulus(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidModulus(d));
    }
    Ok(())
}

pub fn require_even(d: u32) -> Result<()> {
    check_modulus(d)?;
    if !d.is_multiple_of(2) {
        return Err(Error::OddModulus(d));
    }
    Ok(())
}

/// Reduces a signed integer into `[0, d)`.
pub fn reduce(x: i64, d: u32) -> u32 {
    x.rem_euclid(d as i64) as u32
}

pub fn add(a: u32, b: u32, d: u32) -> u32 {
    ((a as u64 + b as u64) % d as u64) as u32
}

pub fn mul(a: u32, b: u32, d: u32) -> u32 {
    ((a as u64 * b as u64) % d as u64) as u32
}

pub fn neg(a: u32, d: u32) -> u32 {
    (d - a % d) % d
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `d^k` as u128, saturating on overflow.
pub fn space_size(d: u32, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(d as u128);
    }
    acc
}

/// Refuses a search of `d^k` points when it exceeds `cap`.
pub fn check_space(what: &'static str, d: u32, k: usize, cap: u64) -> Result<u64> {
    let required = space_size(d, k);
    if required > cap as u128 {
        return Err(Error::CapExceeded {
            what,
            required,
            cap: cap as u128,
        });
    }
    Ok(required as u64)
}

/// Writes the base-d digits of `index` into `digits`, most significant first.
pub fn decode(mut index: u64, d: u32, digits: &mut [u32]) {
    for slot in digits.iter_mut().rev() {
        *slot = (index % d as u64) as u32;
        index /= d as u64;
    }
}

pub fn encode(digits: &[u32], d: u32) -> u64 {
    digits
        .iter()
        .fold(0u64, |acc, &x| acc * d as u64 + x as u64)
}

/// Advances a most-significant-first base-d counter. Returns false on wrap.
pub fn increment(digits: &mut [u32], d: u32) -> bool {
    for slot in digits.iter_mut().rev() {
        *slot += 1;
        if *slot < d {
            return true;
        }
        *slot = 0;
    }
    false
}
