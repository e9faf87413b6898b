use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::int::{lcm, Rational};
use super::poly::QPolynomial;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: core::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        Self { rows: m.rows, cols: m.cols, data: m.data.iter().cloned().map(Rational::from_integer).collect() }
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()))
    }

    pub fn scale_to_int(&self, d: &BigInt) -> IntMatrix {
        let dq = Rational::from_integer(d.clone());
        let data = self
            .data
            .iter()
            .map(|c| {
                let v = c * &dq;
                assert!(v.is_integer(), "scale does not clear denominators");
                v.to_integer()
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

/// Hermite normal form with rows as lattice generators: lower triangular, positive
/// diagonal, and every entry left of the diagonal reduced into `[0, diagonal of its column)`.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.square_dim()?;
    let mut a = m.clone();
    for col in (0..n).rev() {
        for row in 0..col {
            if a[(row, col)].is_zero() {
                continue;
            }
            let x = a[(col, col)].clone();
            let y = a[(row, col)].clone();
            let e = x.extended_gcd(&y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            for j in 0..=col {
                let rc = a[(col, j)].clone();
                let rr = a[(row, j)].clone();
                a[(col, j)] = &e.x * &rc + &e.y * &rr;
                a[(row, j)] = &xg * &rr - &yg * &rc;
            }
        }
        if a[(col, col)].is_zero() {
            return Err(Error::Singular);
        }
        if a[(col, col)].is_negative() {
            for j in 0..=col {
                a[(col, j)] = -a[(col, j)].clone();
            }
        }
    }
    for i in 0..n {
        for j in (0..i).rev() {
            let q = a[(i, j)].div_floor(&a[(j, j)]);
            if q.is_zero() {
                continue;
            }
            for k in 0..=j {
                let t = &q * &a[(j, k)];
                a[(i, k)] -= t;
            }
        }
    }
    Ok(a)
}

/// Characteristic polynomial of an integer matrix, highest coefficient first
/// (`[1, c_1, ..., c_n]` for `X^n + c_1 X^(n-1) + ... + c_n`), by Berkowitz's
/// division-free recurrence.
pub fn charpoly_int_coeffs(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = m.square_dim()?;
    let mut vect = vec![BigInt::one()];
    for r in 0..n {
        let mut q = Vec::with_capacity(r + 2);
        q.push(BigInt::one());
        q.push(-m[(r, r)].clone());
        let mut v: Vec<BigInt> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for k in 0..r {
            let dot: BigInt = (0..r).map(|j| &m[(r, j)] * &v[j]).sum();
            q.push(-dot);
            if k + 1 < r {
                v = (0..r).map(|i| (0..r).map(|j| &m[(i, j)] * &v[j]).sum()).collect();
            }
        }
        let next = (0..r + 2)
            .map(|i| (0..=i.min(r)).filter(|&j| i - j < q.len()).map(|j| &q[i - j] * &vect[j]).sum())
            .collect();
        vect = next;
    }
    Ok(vect)
}

/// Monic characteristic polynomial `det(X*I - M)`.
pub fn charpoly(m: &RatMatrix) -> Result<QPolynomial> {
    let n = m.square_dim()?;
    let d = m.denominator();
    let coeffs = charpoly_int_coeffs(&m.scale_to_int(&d))?;
    // coefficient of X^(n-j) is c_j / d^j
    let mut dpow = BigInt::one();
    let mut out = vec![Rational::zero(); n + 1];
    for (j, c) in coeffs.into_iter().enumerate() {
        out[n - j] = Rational::new(c, dpow.clone());
        dpow *= &d;
    }
    Ok(QPolynomial::from_coeffs(out))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant_int(m: &IntMatrix) -> Result<BigInt> {
    let n = m.square_dim()?;
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[(n - 1, n - 1)] })
}

pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    let n = m.square_dim()?;
    let d = m.denominator();
    let det = determinant_int(&m.scale_to_int(&d))?;
    Ok(Rational::new(det, num_traits::pow(d, n)))
}
