//! Small number-theory helpers.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Euler's criterion: `a` is a nonzero square mod the odd prime `p`.
pub fn quadratic_residue(a: i64, p: u64) -> Result<bool> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(false);
    }
    Ok(pow_mod(r, (p - 1) / 2, p) == 1)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    prime_factors(n).first().copied()
}

/// Multiplicative order of 2 modulo odd `n > 1`.
pub fn order_of_two(n: u64) -> Option<u64> {
    if n < 2 || n.is_multiple_of(2) {
        return None;
    }
    let mut e = 1;
    let mut x = 2 % n;
    while x != 1 {
        x = x * 2 % n;
        e += 1;
    }
    Some(e)
}

/// Every prime factor `p` of `length` has `p = 5 mod 8`, or `p = 1 mod 8`
/// with the order of 2 mod `p` divisible by 4. Under this condition an
/// equi-difference tight weight-3 CAC of that length is known to exist.
pub fn tight_length_condition(length: u64) -> bool {
    length > 1
        && prime_factors(length).into_iter().all(|p| {
            p % 8 == 5 || (p % 8 == 1 && order_of_two(p).is_some_and(|e| e % 4 == 0))
        })
}
