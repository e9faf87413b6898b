//! φ-adic developments, principal Newton polygons, residual polynomials and Ore's
//! index bound.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_fp_coeffs, is_prime, vp_poly, FpExtField, FpPolynomial, QPolynomial, Rational};

/// The unique expansion `f = Σ a_i φ^i` with `deg a_i < deg φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDevelopment {
    pub f: QPolynomial,
    pub phi: QPolynomial,
    pub p: u64,
    pub coefficients: Vec<QPolynomial>,
    /// `v_p(a_i)`, `None` standing for `+∞` when `a_i = 0`.
    pub valuations: Vec<Option<u64>>,
}

impl PhiDevelopment {
    /// `Σ a_i φ^i`.
    pub fn reconstruct(&self) -> QPolynomial {
        let mut acc = QPolynomial::zero();
        for a in self.coefficients.iter().rev() {
            acc = &(&acc * &self.phi) + a;
        }
        acc
    }

    pub fn points(&self) -> Vec<(u64, u64)> {
        self.valuations
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i as u64, v)))
            .collect()
    }
}

pub fn phi_development(f: &QPolynomial, phi: &QPolynomial, p: u64) -> Result<PhiDevelopment> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !phi.is_monic() {
        return Err(Error::NotMonic);
    }
    if phi.degree() == Some(0) {
        return Err(Error::Precondition("φ must have positive degree".into()));
    }
    if !f.is_integral() || !phi.is_integral() {
        return Err(Error::NotIntegral);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut coefficients = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(phi)?;
        coefficients.push(r);
        rest = q;
    }
    let valuations = coefficients
        .iter()
        .map(|a| if a.is_zero() { Ok(None) } else { vp_poly(p, a).map(|v| Some(v as u64)) })
        .collect::<Result<_>>()?;
    Ok(PhiDevelopment { f: f.clone(), phi: phi.clone(), p, coefficients, valuations })
}

/// Polynomial in `Y` over the residue field `F_p[X]/(φ̄)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpExtPolynomial {
    pub p: u64,
    pub phi_bar: FpPolynomial,
    /// `coefficients[i]` is the coefficient of `Y^i`, each reduced modulo `φ̄`.
    pub coefficients: Vec<FpPolynomial>,
}

impl FpExtPolynomial {
    pub fn new(phi_bar: FpPolynomial, coefficients: Vec<FpPolynomial>) -> Self {
        let p = phi_bar.modulus();
        let mut coefficients: Vec<_> =
            coefficients.iter().map(|c| c.rem(&phi_bar).expect("φ̄ nonzero")).collect();
        while coefficients.last().is_some_and(FpPolynomial::is_zero) {
            coefficients.pop();
        }
        Self { p, phi_bar, coefficients }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn derivative(&self) -> Self {
        let coefficients =
            self.coefficients.iter().enumerate().skip(1).map(|(i, c)| c.scale(i as u64 % self.p)).collect();
        Self::new(self.phi_bar.clone(), coefficients)
    }

    fn field(&self) -> Result<FpExtField> {
        FpExtField::new(self.phi_bar.clone())
    }

    fn div_rem_in(&self, k: &FpExtField, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let inv = k
            .inv(&d.coefficients[dd])
            .ok_or_else(|| Error::Precondition(format!("{} is not irreducible modulo {}", self.phi_bar, self.p)))?;
        let mut rem = self.coefficients.clone();
        let Some(sd) = self.degree() else {
            return Ok((self.clone(), self.clone()));
        };
        if sd < dd {
            return Ok((Self::new(self.phi_bar.clone(), Vec::new()), self.clone()));
        }
        let mut quot = vec![FpPolynomial::zero(self.p); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = k.mul(&rem[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coefficients.iter().enumerate() {
                rem[i + j] = k.reduce(&rem[i + j].sub(&k.mul(&c, b)));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.phi_bar.clone(), quot), Self::new(self.phi_bar.clone(), rem)))
    }

    /// Greatest common divisor, normalized to be monic.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.phi_bar != other.phi_bar {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let k = self.field()?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem_in(&k, &b)?.1;
            a = b;
            b = r;
        }
        let lead = a.coefficients.last().expect("nonzero");
        let inv = k.inv(lead).ok_or_else(|| Error::Precondition("residue field modulus is reducible".into()))?;
        let coefficients = a.coefficients.iter().map(|c| k.mul(c, &inv)).collect();
        Ok(Self::new(self.phi_bar.clone(), coefficients))
    }

    /// `gcd(R, R')` is a constant.
    pub fn is_separable(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }
}

impl fmt::Display for FpExtPolynomial {
    /// Residue-field coefficients of positive degree are written in `x` and parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let constant = c.degree() == Some(0);
            if i == 0 || !c.is_one() {
                if constant {
                    write!(f, "{}", c.coeff(0))?;
                } else {
                    f.write_str("(")?;
                    fmt_fp_coeffs(c.coeffs(), "x", f)?;
                    f.write_str(")")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("Y")?,
                _ => write!(f, "Y^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpExtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpExtPolynomial({self} over F_{}[x]/({}))", self.p, self.phi_bar)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub start: (u64, u64),
    pub end: (u64, u64),
    /// Slope is `-h/e`, `gcd(h, e) = 1`.
    pub h: u64,
    pub e: u64,
    /// Projection length on the abscissa.
    pub length: u64,
    /// `length / e`.
    pub degree: u64,
    pub residual: FpExtPolynomial,
}

impl Side {
    pub fn slope(&self) -> (u64, u64) {
        (self.h, self.e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(u64, u64)>,
    pub vertices: Vec<(u64, u64)>,
    pub sides: Vec<Side>,
}

impl NewtonPolygon {
    /// Height of the polygon at integer abscissa `x`, rounded down; `None` outside its projection.
    pub fn floor_height(&self, x: u64) -> Option<u64> {
        let side = self.sides.iter().find(|s| s.start.0 <= x && x <= s.end.0)?;
        let (x0, y0) = side.start;
        let drop = ((x - x0) * side.h).div_ceil(side.e);
        Some(y0 - drop)
    }
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

fn reduce_coefficient(a: &QPolynomial, p: u64, u: u64) -> FpPolynomial {
    let scale = Rational::from_integer(BigInt::from(p).pow(u as u32)).recip();
    FpPolynomial::from_qpoly(p, &a.scale(&scale)).expect("p-integral after removing content")
}

pub fn principal_polygon(dev: &PhiDevelopment) -> NewtonPolygon {
    let points = dev.points();
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    // keep the strictly descending prefix
    let mut vertices = Vec::new();
    for &v in &hull {
        if vertices.last().is_some_and(|&(_, y): &(u64, u64)| v.1 >= y) {
            break;
        }
        vertices.push(v);
    }
    let sides = vertices
        .windows(2)
        .map(|w| {
            let (start, end) = (w[0], w[1]);
            let length = end.0 - start.0;
            let drop = start.1 - end.1;
            let g = length.gcd(&drop);
            let mut side = Side {
                start,
                end,
                h: drop / g,
                e: length / g,
                length,
                degree: g,
                residual: FpExtPolynomial::new(FpPolynomial::one(dev.p), Vec::new()),
            };
            side.residual = residual_polynomial(dev, &side);
            side
        })
        .collect();
    NewtonPolygon { points, vertices, sides }
}

/// `deg φ` times the number of lattice points `(x, y)` with `x ≥ 1`, `y ≥ 1` on or under the polygon.
pub fn phi_index(poly: &NewtonPolygon, degphi: u64) -> u64 {
    let (Some(first), Some(last)) = (poly.vertices.first(), poly.vertices.last()) else {
        return 0;
    };
    let count: u64 = (first.0.max(1)..=last.0).map(|x| poly.floor_height(x).unwrap_or(0)).sum();
    degphi * count
}

/// `c_t + c_{t+e} Y + … + c_{t+de} Y^d` read off the lattice points of `side`.
pub fn residual_polynomial(dev: &PhiDevelopment, side: &Side) -> FpExtPolynomial {
    let p = dev.p;
    let phi_bar = FpPolynomial::from_qpoly(p, &dev.phi).expect("integral φ");
    let coefficients = (0..=side.degree)
        .map(|j| {
            let i = (side.start.0 + j * side.e) as usize;
            let on_side = side.start.1 - j * side.h;
            match dev.valuations.get(i).copied().flatten() {
                Some(u) if u == on_side => reduce_coefficient(&dev.coefficients[i], p, u),
                _ => FpPolynomial::zero(p),
            }
        })
        .collect();
    FpExtPolynomial::new(phi_bar, coefficients)
}

/// All residual polynomials of the principal polygon are separable.
pub fn is_regular(dev: &PhiDevelopment) -> Result<bool> {
    let poly = principal_polygon(dev);
    for side in &poly.sides {
        if !side.residual.is_separable()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-factor data behind [`index_lower_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreFactor {
    pub phi: QPolynomial,
    pub polygon: NewtonPolygon,
    pub phi_index: u64,
    pub regular: bool,
}

/// Developments along each irreducible factor of `f mod p`, lifted with coefficients in `[0, p)`.
pub fn ore_factors(f: &QPolynomial, p: u64) -> Result<Vec<OreFactor>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_integral() {
        return Err(Error::NotIntegral);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fbar = FpPolynomial::from_qpoly(p, f)?;
    fbar.distinct_irreducible_factors()?
        .into_iter()
        .map(|phi_bar| {
            let phi = phi_bar.to_qpoly();
            let dev = phi_development(f, &phi, p)?;
            let polygon = principal_polygon(&dev);
            let degphi = phi_bar.degree().expect("irreducible factor") as u64;
            let phi_index = phi_index(&polygon, degphi);
            let mut regular = true;
            for side in &polygon.sides {
                regular &= side.residual.is_separable()?;
            }
            Ok(OreFactor { phi, polygon, phi_index, regular })
        })
        .collect()
}

/// Ore's bound `Σ ind_φ(f) ≤ ind_p`, with `exact` set when every development is regular.
pub fn index_lower_bound(f: &QPolynomial, p: u64) -> Result<(u64, bool)> {
    let factors = ore_factors(f, p)?;
    Ok((factors.iter().map(|o| o.phi_index).sum(), factors.iter().all(|o| o.regular)))
}

/// `X^n - m`.
pub fn pure_polynomial(n: u64, m: i64) -> QPolynomial {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = BigInt::from(-m);
    c[n as usize] = BigInt::one();
    QPolynomial::from_integers(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn zpoly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn development_examples() {
        let dev = phi_development(&pure_polynomial(4, 2), &zpoly(&[0, 1]), 2).unwrap();
        assert_eq!(dev.valuations, [Some(1), None, None, None, Some(0)]);
        assert_eq!(dev.coefficients[0], zpoly(&[-2]));

        let dev = phi_development(&pure_polynomial(9, 28), &zpoly(&[-28, 1]), 3).unwrap();
        let binom = [1i64, 9, 36, 84, 126, 126, 84, 36, 9, 1];
        for (i, &b) in binom.iter().enumerate().skip(1) {
            let expect = BigInt::from(b) * BigInt::from(28).pow(9 - i as u32);
            assert_eq!(dev.coefficients[i], QPolynomial::from_integers([expect]));
        }
        assert_eq!(dev.coefficients[0], QPolynomial::from_integers([BigInt::from(28).pow(9) - 28]));

        let phi = zpoly(&[3, 1, 1]);
        let dev = phi_development(&phi, &phi, 5).unwrap();
        assert_eq!(dev.coefficients, [QPolynomial::zero(), QPolynomial::one()]);
        assert_eq!(dev.valuations, [None, Some(0)]);

        assert_eq!(phi_development(&phi, &zpoly(&[1, 2]), 5), Err(Error::NotMonic));
    }

    #[test]
    fn polygon_of_x9_minus_28() {
        let dev = phi_development(&pure_polynomial(9, 28), &zpoly(&[-28, 1]), 3).unwrap();
        let poly = principal_polygon(&dev);
        assert_eq!(poly.vertices, [(0, 3), (1, 2), (3, 1), (9, 0)]);
        let slopes: Vec<_> = poly.sides.iter().map(Side::slope).collect();
        assert_eq!(slopes, [(1, 1), (1, 2), (1, 6)]);
        assert_eq!(phi_index(&poly, 1), 4);
        assert!(poly.sides.iter().all(|s| s.residual.degree() == Some(1)));
        assert!(is_regular(&dev).unwrap());
        assert_eq!(index_lower_bound(&pure_polynomial(9, 28), 3), Ok((4, true)));
    }

    #[test]
    fn flat_and_eisenstein_polygons() {
        // X^2 + X + 1 over F_2 is irreducible: all valuations vanish
        let dev = phi_development(&zpoly(&[1, 1, 1]), &zpoly(&[1, 1, 1]), 2).unwrap();
        let poly = principal_polygon(&dev);
        assert!(poly.sides.is_empty());
        assert_eq!(phi_index(&poly, 2), 0);

        for (n, m, p) in [(5u64, 3i64, 3u64), (7, 10, 2), (7, 10, 5), (12, 6, 3)] {
            let dev = phi_development(&pure_polynomial(n, m), &zpoly(&[0, 1]), p).unwrap();
            let poly = principal_polygon(&dev);
            assert_eq!(poly.vertices, [(0, 1), (n, 0)]);
            assert_eq!(poly.sides[0].slope(), (1, n));
            assert_eq!(phi_index(&poly, 1), 0);
            assert_eq!(index_lower_bound(&pure_polynomial(n, m), p), Ok((0, true)));
        }
        assert_eq!(phi_index(&NewtonPolygon { points: vec![], vertices: vec![], sides: vec![] }, 3), 0);
    }

    #[test]
    fn quartic_merged_side() {
        // X^4 - 5 at p = 2 along X - 1
        let dev = phi_development(&pure_polynomial(4, 5), &zpoly(&[-1, 1]), 2).unwrap();
        let poly = principal_polygon(&dev);
        let first = &poly.sides[0];
        assert_eq!(first.residual.to_string(), "Y^2+Y+1");
        assert!(first.residual.is_separable().unwrap());
        assert!(is_regular(&dev).unwrap());
    }

    #[test]
    fn non_regular_residual() {
        // X^2 + 4 along X at p = 2: one side (0,2)-(2,0), residual 1 + Y^2 = (1 + Y)^2
        let dev = phi_development(&zpoly(&[4, 0, 1]), &zpoly(&[0, 1]), 2).unwrap();
        let poly = principal_polygon(&dev);
        assert_eq!(poly.sides.len(), 1);
        assert_eq!(poly.sides[0].residual.to_string(), "Y^2+1");
        assert!(!is_regular(&dev).unwrap());
        assert_eq!(index_lower_bound(&zpoly(&[4, 0, 1]), 2), Ok((1, false)));
    }

    #[test]
    fn quadratic_lower_bounds() {
        // X^2 - 5 = (X + 1)^2 mod 2; residual Y^2 + Y + 1 and one lattice point
        assert_eq!(index_lower_bound(&pure_polynomial(2, 5), 2), Ok((1, true)));
        assert_eq!(index_lower_bound(&pure_polynomial(2, 3), 2), Ok((0, true)));
        assert_eq!(index_lower_bound(&zpoly(&[1, 1, 1]), 2), Ok((0, true)));
        assert_eq!(index_lower_bound(&zpoly(&[1, 1, 2]), 2), Err(Error::NotMonic));
    }

    #[test]
    fn residual_over_extension() {
        // (X^2+X+1)^2 + 2 at p = 2: one side of degree 1 over F_4
        let phi = zpoly(&[1, 1, 1]);
        let f = &(&phi * &phi) + &zpoly(&[2]);
        let dev = phi_development(&f, &phi, 2).unwrap();
        let poly = principal_polygon(&dev);
        assert_eq!(poly.vertices, [(0, 1), (2, 0)]);
        assert_eq!(phi_index(&poly, 2), 0);
        assert!(is_regular(&dev).unwrap());
        // (X^2+X+1)^2 + 4X: side (0,2)-(2,0) with residual Y^2 + x
        let f = &(&phi * &phi) + &zpoly(&[0, 4]);
        let dev = phi_development(&f, &phi, 2).unwrap();
        let poly = principal_polygon(&dev);
        assert_eq!(poly.sides[0].residual.to_string(), "Y^2+(x)");
        // Y^2 + x is a square over F_4
        assert!(!is_regular(&dev).unwrap());
        assert_eq!(phi_index(&poly, 2), 2);
    }

    fn int_poly(max_deg: usize) -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-50i64..50, 1..=max_deg + 1).prop_map(QPolynomial::from_integers)
    }

    fn monic(max_deg: usize) -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-9i64..9, 1..=max_deg).prop_map(|mut c| {
            c.push(1);
            QPolynomial::from_integers(c)
        })
    }

    proptest! {
        #[test]
        fn reconstruction(f in int_poly(10), phi in monic(3), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            prop_assume!(!f.is_zero());
            let dev = phi_development(&f, &phi, p).unwrap();
            prop_assert_eq!(dev.reconstruct(), f);
            let dphi = phi.degree().unwrap();
            prop_assert!(dev.coefficients.iter().all(|a| a.degree().is_none_or(|d| d < dphi)));
        }

        #[test]
        fn convexity(f in int_poly(12), p in prop::sample::select(vec![2u64, 3, 5])) {
            prop_assume!(!f.is_zero());
            let dev = phi_development(&f, &zpoly(&[1, 1]), p).unwrap();
            let poly = principal_polygon(&dev);
            // slopes -h/e strictly increase: h1/e1 > h2/e2
            for w in poly.sides.windows(2) {
                prop_assert!(w[0].h * w[1].e > w[1].h * w[0].e);
            }
            for s in &poly.sides {
                prop_assert!(s.h > 0 && s.length % s.e == 0);
                prop_assert_eq!(s.residual.degree(), Some(s.degree as usize));
            }
            for &(x, y) in &poly.points {
                if let Some(h) = poly.floor_height(x) {
                    prop_assert!(y >= h);
                }
            }
        }

        #[test]
        fn eisenstein_index_zero(n in 2u64..12, unit in 1i64..40, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            prop_assume!(unit % p as i64 != 0);
            let m = unit * p as i64;
            prop_assert_eq!(index_lower_bound(&pure_polynomial(n, m), p).unwrap(), (0, true));
        }
    }
}
