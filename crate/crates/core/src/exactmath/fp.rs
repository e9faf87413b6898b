use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::int::{is_prime, Rational};
use super::poly::QPolynomial;
use crate::error::{Error, Result};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a unit modulo `p` (any modulus, via the extended Euclidean algorithm).
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(p as i128) as u64)
}

fn reduce_rational(c: &Rational, p: u64) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p);
    let num = c.numer().mod_floor(&pb);
    let den = c.denom().mod_floor(&pb);
    let num = u64::try_from(num).expect("residue fits");
    let den = u64::try_from(den).expect("residue fits");
    let inv = inv_mod(den, p).ok_or(Error::Precondition(alloc::format!(
        "denominator of {c} is not invertible modulo {p}"
    )))?;
    Ok(mul_mod(num, inv, p))
}

/// Polynomial over the prime field `F_p`, coefficients in `[0, p)`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect())
    }

    /// Reduction of a rational polynomial whose denominators are prime to `p`.
    pub fn from_qpoly(p: u64, f: &QPolynomial) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let coeffs = f.coeffs().iter().map(|c| reduce_rational(c, p)).collect::<Result<_>>()?;
        Ok(Self::new(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn to_qpoly(&self) -> QPolynomial {
        QPolynomial::from_integers(self.coeffs.iter().copied())
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(inv_mod(l, self.p).expect("p prime")),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - rhs.coeff(i)) % self.p).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if self.p != divisor.p {
            return Err(Error::ModulusMismatch(self.p, divisor.p));
        }
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let p = self.p;
        let lead_inv = inv_mod(divisor.coeffs[dd], p).expect("p prime");
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((Self::zero(p), self.clone()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, p);
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(c, d, p)) % p;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let l = inv_mod(r0.leading().expect("nonzero"), p).expect("p prime");
        Ok((r0.scale(l), s0.scale(l), t0.scale(l)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect(),
        )
    }

    /// `gcd(f, f')` is constant.
    pub fn is_separable(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(self.p).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// The distinct monic irreducible factors of `self`, sorted by degree then coefficients.
    pub fn distinct_irreducible_factors(&self) -> Result<Vec<Self>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        let p = self.p;
        let x = Self::x(p);
        let pexp = BigUint::from(p);
        let mut g = self.monic();
        let mut xp = x.rem(&g)?;
        let mut out = Vec::new();
        let mut d = 0;
        while g.degree().is_some_and(|deg| deg >= 1) {
            d += 1;
            xp = xp.pow_mod(&pexp, &g)?;
            let h = xp.sub(&x).gcd(&g)?;
            if h.degree().is_some_and(|deg| deg >= 1) {
                loop {
                    let c = g.gcd(&h)?;
                    if c.degree() == Some(0) {
                        break;
                    }
                    g = g.div_rem(&c)?.0;
                }
                if g.degree().is_some_and(|deg| deg >= 1) {
                    xp = xp.rem(&g)?;
                }
                equal_degree_split(h, d, &mut out)?;
            }
        }
        out.sort_by(|a, b| a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.cmp(&b.coeffs)));
        Ok(out)
    }
}

/// Splits a squarefree product of irreducibles of common degree `d`.
fn equal_degree_split(h: FpPolynomial, d: usize, out: &mut Vec<FpPolynomial>) -> Result<()> {
    let n = h.degree().expect("nonzero");
    if n == d {
        out.push(h);
        return Ok(());
    }
    let p = h.p;
    let q = BigUint::from(p).pow(d as u32);
    let half = (&q - BigUint::one()) / BigUint::from(2u32);
    // Deterministic sweep over candidate polynomials of degree < n; some candidate always splits.
    let mut index = BigUint::from(p);
    loop {
        let mut digits = Vec::with_capacity(n);
        let mut rest = index.clone();
        while !rest.is_zero() {
            let (qt, r) = rest.div_rem(&BigUint::from(p));
            digits.push(u64::try_from(r).expect("digit"));
            rest = qt;
        }
        index += BigUint::one();
        if digits.len() > n {
            return Err(Error::Precondition("equal-degree splitting exhausted candidates".into()));
        }
        let a = FpPolynomial::new(p, digits);
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut acc = FpPolynomial::zero(p);
            let mut term = a.rem(&h)?;
            for _ in 0..d {
                acc = acc.add(&term);
                term = term.mul(&term).rem(&h)?;
            }
            acc
        } else {
            a.pow_mod(&half, &h)?.sub(&FpPolynomial::one(p))
        };
        if b.is_zero() {
            continue;
        }
        let g = b.gcd(&h)?;
        let gd = g.degree().expect("nonzero");
        if gd > 0 && gd < n {
            let other = h.div_rem(&g)?.0;
            equal_degree_split(g, d, out)?;
            equal_degree_split(other.monic(), d, out)?;
            return Ok(());
        }
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_fp_coeffs(&self.coeffs, "X", f)
    }
}

impl fmt::Debug for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPolynomial({self} mod {})", self.p)
    }
}

pub(crate) fn fmt_fp_coeffs(coeffs: &[u64], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (i, c) {
            (0, _) => write!(f, "{c}")?,
            (_, 1) => {}
            _ => write!(f, "{c}*")?,
        }
        match i {
            0 => {}
            1 => f.write_str(var)?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    Ok(())
}

/// The residue field `F_p[X]/(modulus)` for an irreducible `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpExtField {
    modulus: FpPolynomial,
}

impl FpExtField {
    pub fn new(modulus: FpPolynomial) -> Result<Self> {
        if modulus.degree().is_none_or(|d| d == 0) {
            return Err(Error::Precondition("residue field modulus must have positive degree".into()));
        }
        Ok(Self { modulus: modulus.monic() })
    }

    pub fn modulus(&self) -> &FpPolynomial {
        &self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p
    }

    pub fn reduce(&self, a: &FpPolynomial) -> FpPolynomial {
        a.rem(&self.modulus).expect("modulus nonzero")
    }

    pub fn mul(&self, a: &FpPolynomial, b: &FpPolynomial) -> FpPolynomial {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &FpPolynomial) -> Option<FpPolynomial> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus).ok()?;
        g.is_one().then(|| self.reduce(&s))
    }
}
