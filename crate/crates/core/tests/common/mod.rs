//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Coefficients of `(1 + x + ... + x^n)^N` by repeated multiplication.
pub fn uniform_power(n: usize, big_n: usize) -> Vec<BigUint> {
    let mut coeffs = vec![BigUint::one()];
    for _ in 0..big_n {
        let mut next = vec![BigUint::zero(); coeffs.len() + n];
        for (i, c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..=i + n] {
                *slot += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Natural log of a positive big integer via its decimal expansion.
pub fn ln_big(x: &BigUint) -> f64 {
    let s = x.to_string();
    let head: f64 = s[..s.len().min(17)].parse().unwrap();
    head.ln() + (s.len() - s.len().min(17)) as f64 * std::f64::consts::LN_10
}

pub fn ln_bigint(x: &BigInt) -> f64 {
    ln_big(x.magnitude())
}
