use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::int::{lcm, vp_rational, Rational};
use crate::error::{Error, Result};

/// Dense polynomial over the rationals; `coeffs[i]` is the coefficient of `X^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Least positive integer `c` with `c * self` in `Z[X]`.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients of `self`; `None` unless integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `X^j * self`.
    pub fn shift(&self, j: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `self(X^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![Rational::zero(); deg * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// `min v_p(a_i)` over the nonzero coefficients.
    pub fn vp(&self, p: u64) -> Result<i64> {
        let mut best: Option<i64> = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let v = vp_rational(p, c)?;
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best.ok_or(Error::ZeroPolynomial)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

pub fn vp_poly(p: u64, f: &QPolynomial) -> Result<i64> {
    f.vp(p)
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

/// Renders highest degree first, e.g. `X^8+2*X^4+3*X^2+4`, `1/2*X-3`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn poly_valuation() {
        let f = QPolynomial::from_integers([27, 3, 9]);
        assert_eq!(vp_poly(3, &f), Ok(1));
        assert_eq!(vp_poly(2, &QPolynomial::from_integers([1, 1])), Ok(0));
        let g = QPolynomial::from_coeffs(vec![q(25, 1), q(0, 1), q(0, 1), q(1, 5)]);
        assert_eq!(vp_poly(5, &g), Ok(-1));
        assert_eq!(vp_poly(5, &QPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn denominators_and_display() {
        let f = QPolynomial::from_coeffs(vec![q(1, 6), q(0, 1), q(3, 4)]);
        assert_eq!(f.denominator(), BigInt::from(12));
        assert_eq!(f.to_string(), "3/4*X^2+1/6");
        assert_eq!(QPolynomial::from_integers([4, 0, 3, 0, 1]).to_string(), "X^4+3*X^2+4");
        assert_eq!(QPolynomial::from_integers([-1, 1]).to_string(), "X-1");
        assert!(QPolynomial::from_integers([0, 0, 0]).is_zero());
    }

    #[test]
    fn inflate_and_shift() {
        let f = QPolynomial::from_integers([5, 0, 1]);
        assert_eq!(f.inflate(3), QPolynomial::from_integers([5, 0, 0, 0, 0, 0, 1]));
        assert_eq!(f.shift(2), QPolynomial::from_integers([0, 0, 5, 0, 1]));
    }

    fn small_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6)
            .prop_map(|v| QPolynomial::from_coeffs(v.into_iter().map(|(a, b)| q(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn division_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn product_degree(a in small_poly(), b in small_poly()) {
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(x), Some(y)) => prop_assert_eq!(prod.degree(), Some(x + y)),
                _ => prop_assert!(prod.is_zero()),
            }
        }
    }
}
