use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer as _, Roots};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Largest `e` with `p^e | a`.
pub fn vp_int(p: u64, a: &BigInt) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut e = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        a = q;
        e += 1;
    }
}

/// `v_p(a/b) = v_p(a) - v_p(b)`.
pub fn vp_rational(p: u64, a: &Rational) -> Result<i64> {
    let num = vp_int(p, a.numer())? as i64;
    let den = vp_int(p, a.denom())? as i64;
    Ok(num - den)
}

pub fn vp_u64(p: u64, mut a: u64) -> u32 {
    debug_assert!(a != 0 && p >= 2);
    let mut e = 0;
    while a.is_multiple_of(p) {
        a /= p;
        e += 1;
    }
    e
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d <= n / d {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareFreeness {
    SquareFree,
    /// Carries a prime whose square divides `m`.
    NotSquareFree(u64),
    /// Trial division stopped at the bound with a cofactor that could still hide a square.
    Unknown { bound: u64 },
}

pub const DEFAULT_SQUARE_FREE_BOUND: u64 = 10_000_000;

pub fn square_free_check(m: i64, bound: u64) -> Result<SquareFreeness> {
    if matches!(m, -1..=1) {
        return Err(Error::TrivialRadicand(m));
    }
    let mut c = m.unsigned_abs();
    let mut d = 2u64;
    while d <= bound && d <= c / d {
        if c.is_multiple_of(d) {
            c /= d;
            if c.is_multiple_of(d) {
                return Ok(SquareFreeness::NotSquareFree(d));
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if d > bound && c > 1 && d <= c / d {
        return Ok(SquareFreeness::Unknown { bound });
    }
    Ok(SquareFreeness::SquareFree)
}

/// Least non-negative residue of `a` modulo `modulus`.
pub fn residue(a: &BigInt, modulus: &BigInt) -> BigInt {
    a.mod_floor(modulus)
}

pub fn residue_i64(a: i64, modulus: u64) -> u64 {
    (a as i128).rem_euclid(modulus as i128) as u64
}

/// The unique `x` in `[0, u*v)` with `x = a mod u` and `x = b mod v`, for coprime `u`, `v`.
pub fn crt_pair(a: &BigInt, u: &BigInt, b: &BigInt, v: &BigInt) -> BigInt {
    let e = u.extended_gcd(v);
    debug_assert!(e.gcd.is_one());
    // x = a + u * ((b - a) * u^{-1} mod v)
    let t = ((b - a) * &e.x).mod_floor(v);
    (a + u * t).mod_floor(&(u * v))
}

pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
