#![allow(dead_code)]

use unitquad::field::prime_power;

/// Odd prime powers in `lo..=hi`, ascending.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_ok()).collect()
}
