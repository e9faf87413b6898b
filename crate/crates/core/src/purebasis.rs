//! Integral bases of pure fields `Q(m^(1/n))` for square-free `m`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    crt_pair, factorize, hnf, residue, square_free_check, vp_int, IntMatrix, QPolynomial, Rational, SquareFreeness,
    DEFAULT_SQUARE_FREE_BOUND,
};
use crate::newton::{index_lower_bound, pure_polynomial};
use crate::oracle::{certify, CertifyOptions};

/// The field `Q(α)`, `α^n = m`, with `m ≠ 0, ±1` square-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureField {
    n: u64,
    m: i64,
    factors: Vec<(u64, u32)>,
}

impl PureField {
    pub fn new(n: u64, m: i64) -> Result<Self> {
        Self::with_bound(n, m, DEFAULT_SQUARE_FREE_BOUND, false)
    }

    /// With `allow_unknown`, an inconclusive square-freeness test is accepted.
    pub fn with_bound(n: u64, m: i64, bound: u64, allow_unknown: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        match square_free_check(m, bound)? {
            SquareFreeness::SquareFree => {}
            SquareFreeness::NotSquareFree(p) => return Err(Error::NotSquareFree { m, p }),
            SquareFreeness::Unknown { bound } if !allow_unknown => return Err(Error::SquareFreeUnknown { m, bound }),
            SquareFreeness::Unknown { .. } => {}
        }
        Ok(Self::unchecked(n, m))
    }

    pub(crate) fn unchecked(n: u64, m: i64) -> Self {
        Self { n, m, factors: factorize(n) }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Prime factorization of `n`, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `D(α) = (-1)^(n(n-1)/2) n^n (-m)^(n-1)`, the discriminant of `X^n - m`.
    pub fn poly_discriminant(&self) -> BigInt {
        let n = self.n;
        let mut d = BigInt::from(n).pow(n as u32) * BigInt::from(-self.m).pow((n - 1) as u32);
        if (n * (n - 1) / 2) % 2 == 1 {
            d = -d;
        }
        d
    }
}

/// `numerator / denominator` with an integral numerator of content coprime to the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    numerator: QPolynomial,
    denominator: BigInt,
}

impl BasisElement {
    pub fn new(numerator: QPolynomial, denominator: BigInt) -> Result<Self> {
        if !numerator.is_integral() {
            return Err(Error::NotIntegral);
        }
        if !denominator.is_positive() {
            return Err(Error::Precondition(format!("denominator must be positive, got {denominator}")));
        }
        let g = numerator.coeffs().iter().fold(denominator.clone(), |g, c| g.gcd(c.numer()));
        let numerator = numerator.scale(&Rational::from_integer(g.clone()).recip());
        Ok(Self { numerator, denominator: denominator / g })
    }

    /// From a rational polynomial, taking its least common denominator.
    pub fn from_qpoly(f: &QPolynomial) -> Result<Self> {
        let d = f.denominator();
        Self::new(f.scale(&Rational::from_integer(d.clone())), d)
    }

    pub fn power(j: usize) -> Self {
        Self { numerator: QPolynomial::monomial(Rational::one(), j), denominator: BigInt::one() }
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn degree(&self) -> Option<usize> {
        self.numerator.degree()
    }

    pub fn to_qpoly(&self) -> QPolynomial {
        self.numerator.scale(&Rational::from_integer(self.denominator.clone()).recip())
    }

    /// Integer numerator coefficients, lowest degree first.
    pub fn numerator_coeffs(&self) -> Vec<BigInt> {
        self.numerator.integer_coeffs().expect("integral numerator")
    }

    /// Power-basis coordinates, padded to length `n`.
    pub fn coords(&self, n: usize) -> Vec<Rational> {
        let q = self.to_qpoly();
        (0..n).map(|i| q.coeff(i)).collect()
    }

    /// Non-leading numerator coefficients moved into `(-d/2, d/2]`, which changes the
    /// element by a member of `Z[α]`.
    pub fn balanced(&self) -> Self {
        self.reduce_with(|c, d| {
            let r = c.mod_floor(d);
            if &r * 2 > *d {
                r - d
            } else {
                r
            }
        })
    }

    /// Non-leading numerator coefficients moved into `[0, d)`.
    pub fn least_nonnegative(&self) -> Self {
        self.reduce_with(|c, d| c.mod_floor(d))
    }

    fn reduce_with(&self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let mut c = self.numerator_coeffs();
        let Some(last) = c.len().checked_sub(1) else {
            return self.clone();
        };
        for x in &mut c[..last] {
            *x = f(x, &self.denominator);
        }
        Self { numerator: QPolynomial::from_integers(c), denominator: self.denominator.clone() }
    }
}

/// A triangular basis: element `i` has degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralBasis {
    field: PureField,
    elements: Vec<BasisElement>,
    hnf_denominator: BigInt,
    hnf: IntMatrix,
}

impl IntegralBasis {
    pub fn new(field: PureField, elements: Vec<BasisElement>) -> Result<Self> {
        let n = field.degree();
        if elements.len() != n {
            return Err(Error::Precondition(format!("expected {n} elements, got {}", elements.len())));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.degree() != Some(i) {
                return Err(Error::NotTriangular(i));
            }
        }
        let d = elements.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denominator()));
        let scale = Rational::from_integer(d.clone());
        let rows = elements
            .iter()
            .map(|e| e.coords(n).iter().map(|c| (c * &scale).to_integer()).collect())
            .collect();
        let hnf = hnf(&IntMatrix::from_rows(rows))?;
        Ok(Self { field, elements, hnf_denominator: d, hnf })
    }

    pub fn power_basis(field: PureField) -> Self {
        let elements = (0..field.degree()).map(BasisElement::power).collect();
        Self::new(field, elements).expect("power basis is triangular")
    }

    pub fn field(&self) -> &PureField {
        &self.field
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn polynomials(&self) -> Vec<QPolynomial> {
        self.elements.iter().map(BasisElement::to_qpoly).collect()
    }

    /// Canonical form: common denominator `D` and the HNF of `D` times the coordinate rows.
    pub fn canonical(&self) -> (&BigInt, &IntMatrix) {
        (&self.hnf_denominator, &self.hnf)
    }

    /// Same Z-module as `other`.
    pub fn same_span(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// `Π d_i`, the index of `Z[α]` in the spanned module.
    pub fn denominator_product(&self) -> BigInt {
        self.elements.iter().map(|e| e.denominator().clone()).product()
    }

    /// Element-wise [`BasisElement::least_nonnegative`].
    pub fn least_nonnegative(&self) -> Self {
        let elements = self.elements.iter().map(BasisElement::least_nonnegative).collect();
        Self::new(self.field.clone(), elements).expect("degrees unchanged")
    }

    /// Element-wise [`BasisElement::balanced`].
    pub fn balanced(&self) -> Self {
        let elements = self.elements.iter().map(BasisElement::balanced).collect();
        Self::new(self.field.clone(), elements).expect("degrees unchanged")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub n: u64,
    pub m: i64,
    /// `p -> ind_p` for every `p | n`.
    pub per_prime: BTreeMap<u64, u64>,
    pub total_index: BigInt,
    pub field_discriminant: BigInt,
    pub poly_discriminant: BigInt,
    /// `p -> (Ore bound, exact)` from the Newton polygons of `X^n - m`, agreeing with `per_prime`.
    pub polygon: BTreeMap<u64, (u64, bool)>,
}

/// `s = v_p(m^p - m) - 1`.
pub fn s_value(p: u64, m: i64) -> Result<u64> {
    if m % p as i64 == 0 {
        return Err(Error::SUndefined(p));
    }
    let m = BigInt::from(m);
    let v = vp_int(p, &(m.pow(p as u32) - &m))?;
    Ok(u64::from(v) - 1)
}

/// `h_t^(r)(X) = (X^(p^k) - r^(p^t)) / (X^(p^(k-t)) - r)`.
pub fn h_polynomial(p: u64, k: u32, r: &BigInt, t: u32) -> Result<QPolynomial> {
    if t > k {
        return Err(Error::TOutOfRange { t, k });
    }
    let pk = p.pow(k) as usize;
    let step = p.pow(k - t) as usize;
    let terms = p.pow(t) as usize;
    let mut coeffs = alloc::vec![BigInt::zero(); pk - step + 1];
    let mut power = BigInt::one();
    for j in 0..terms {
        coeffs[pk - (j + 1) * step] = power.clone();
        power *= r;
    }
    Ok(QPolynomial::from_integers(coeffs))
}

/// `ind_p` of `m^(1/p^k)`.
pub fn ind_p_closed_form(p: u64, k: u32, m: i64) -> u64 {
    let Ok(s) = s_value(p, m) else {
        return 0;
    };
    let pk = p.pow(k);
    if s <= u64::from(k) {
        (pk - p.pow(k - s as u32)) / (p - 1)
    } else {
        (pk - 1) / (p - 1)
    }
}

pub fn prime_power_basis(p: u64, k: u32, m: i64) -> Result<IntegralBasis> {
    let n = p.checked_pow(k).ok_or_else(|| Error::Precondition("degree overflows".into()))?;
    prime_power_basis_in(&PureField::new(n, m)?, p, k)
}

fn prime_power_basis_in(field: &PureField, p: u64, k: u32) -> Result<IntegralBasis> {
    let m = field.m();
    let Ok(s) = s_value(p, m) else {
        return Ok(IntegralBasis::power_basis(field.clone()));
    };
    let r = residue(&BigInt::from(m), &BigInt::from(p).pow(k + 1));
    let top = s.min(u64::from(k)) as u32;
    let mut elements = Vec::with_capacity(field.degree());
    for t in 0..=top {
        let h = h_polynomial(p, k, &r, t)?;
        let den = BigInt::from(p).pow(t);
        let count = if t < top { p.pow(k - t) - p.pow(k - t - 1) } else { p.pow(k - t) };
        for j in 0..count as usize {
            elements.push(BasisElement::new(h.shift(j), den.clone())?.balanced());
        }
    }
    IntegralBasis::new(field.clone(), elements)
}

/// CRT gluing of bases of `Q(m^(1/n1))` and `Q(m^(1/n2))` for coprime `n1`, `n2`.
pub fn compose_bases(basis1: &IntegralBasis, basis2: &IntegralBasis) -> Result<IntegralBasis> {
    let (n1, n2) = (basis1.field.n, basis2.field.n);
    if basis1.field.m != basis2.field.m {
        return Err(Error::FieldMismatch);
    }
    if n1.gcd(&n2) != 1 {
        return Err(Error::NotCoprime(n1, n2));
    }
    for b in [basis1, basis2] {
        for (i, e) in b.elements.iter().enumerate() {
            if e.degree() != Some(i) {
                return Err(Error::NotTriangular(i));
            }
        }
    }
    let n = (n1 * n2) as usize;
    let (n1, n2) = (n1 as usize, n2 as usize);
    let mut elements = Vec::with_capacity(n);
    for deg in 0..n {
        let psi = &basis1.elements[deg / n2];
        let omega = &basis2.elements[deg / n1];
        let a = psi.numerator.inflate(n2).shift(deg % n2).integer_coeffs().expect("integral");
        let b = omega.numerator.inflate(n1).shift(deg % n1).integer_coeffs().expect("integral");
        let (u, v) = (&psi.denominator, &omega.denominator);
        let uv = u * v;
        let zero = BigInt::zero();
        let mut c: Vec<BigInt> = (0..=deg)
            .map(|i| crt_pair(a.get(i).unwrap_or(&zero), u, b.get(i).unwrap_or(&zero), v))
            .collect();
        if c[deg].is_zero() {
            c[deg] = uv.clone();
        }
        elements.push(BasisElement::new(QPolynomial::from_integers(c), uv)?);
    }
    IntegralBasis::new(PureField::unchecked((n1 * n2) as u64, basis1.field.m), elements)
}

/// The basis before certification: prime-power bases folded by CRT over ascending primes.
pub fn construct_basis(field: &PureField) -> Result<IntegralBasis> {
    let mut acc: Option<IntegralBasis> = None;
    for &(p, k) in field.factors() {
        let part = prime_power_basis_in(&PureField::unchecked(p.pow(k), field.m), p, k)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => compose_bases(&prev, &part)?,
        });
    }
    let basis = acc.ok_or(Error::DegreeTooSmall(field.n))?;
    Ok(IntegralBasis { field: field.clone(), ..basis })
}

pub fn index_report(field: &PureField) -> Result<IndexReport> {
    let n = field.n;
    let m = field.m;
    let mut per_prime = BTreeMap::new();
    // index multiplicativity over the coprime prime-power parts
    let mut done = 1u64;
    let mut total = BigInt::one();
    for &(p, k) in field.factors() {
        let q = p.pow(k);
        let ind_q = BigInt::from(p).pow(ind_p_closed_form(p, k, m) as u32);
        total = total.pow(q as u32) * ind_q.pow(done as u32);
        done *= q;
    }
    for &(p, _) in field.factors() {
        per_prime.insert(p, u64::from(vp_int(p, &total)?));
    }
    let mut polygon = BTreeMap::new();
    let f = pure_polynomial(n, m);
    for (&p, &ind) in &per_prime {
        let (bound, exact) = index_lower_bound(&f, p)?;
        if (exact && bound != ind) || bound > ind {
            return Err(Error::IndexMismatch { p, closed: ind, polygon: bound });
        }
        polygon.insert(p, (bound, exact));
    }
    let poly_discriminant = field.poly_discriminant();
    let square = &total * &total;
    let (field_discriminant, rem) = poly_discriminant.div_rem(&square);
    if !rem.is_zero() {
        return Err(Error::Precondition(format!("index {total} squared does not divide D(α) = {poly_discriminant}")));
    }
    Ok(IndexReport { n, m, per_prime, total_index: total, field_discriminant, poly_discriminant, polygon })
}

/// Certified basis and index report; refuses to return a basis that fails certification.
pub fn integral_basis(field: &PureField) -> Result<(IntegralBasis, IndexReport)> {
    integral_basis_with(field, &CertifyOptions::default())
}

pub fn integral_basis_with(field: &PureField, options: &CertifyOptions) -> Result<(IntegralBasis, IndexReport)> {
    let basis = construct_basis(field)?;
    let report = index_report(field)?;
    let cert = certify(&basis, options)?;
    if !cert.certified() {
        let reason: String = cert.failures().join("; ");
        return Err(Error::Uncertified(reason));
    }
    Ok((basis, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn rendered(b: &IntegralBasis) -> Vec<alloc::string::String> {
        b.polynomials().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn s_values() {
        assert_eq!(s_value(3, 28), Ok(2));
        assert_eq!(s_value(3, 10), Ok(1));
        assert_eq!(s_value(3, 6), Err(Error::SUndefined(3)));
        for m in [5i64, 13, 17, -3, -7] {
            assert!(s_value(2, m).unwrap() >= 1);
        }
        assert_eq!(s_value(2, 3), Ok(0));
    }

    #[test]
    fn h_polynomials() {
        let one = BigInt::one();
        assert_eq!(h_polynomial(3, 2, &one, 1).unwrap(), QPolynomial::from_integers([1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(h_polynomial(3, 2, &one, 2).unwrap(), QPolynomial::from_integers([1; 9]));
        assert_eq!(h_polynomial(5, 3, &BigInt::from(7), 0).unwrap(), QPolynomial::one());
        assert_eq!(h_polynomial(2, 1, &one, 2), Err(Error::TOutOfRange { t: 2, k: 1 }));
        let r = BigInt::from(2);
        assert_eq!(h_polynomial(2, 2, &r, 1).unwrap(), QPolynomial::from_integers([2, 0, 1]));
        assert_eq!(h_polynomial(2, 2, &r, 2).unwrap(), QPolynomial::from_integers([8, 4, 2, 1]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ind_p_closed_form(3, 2, 28), 4);
        assert_eq!(ind_p_closed_form(3, 2, 10), 3);
        assert_eq!(ind_p_closed_form(3, 2, 6), 0);
        assert_eq!(ind_p_closed_form(2, 1, 5), 1);
        assert_eq!(ind_p_closed_form(2, 1, 7), 0);
    }

    #[test]
    fn classical_small_degree() {
        let b = prime_power_basis(2, 1, 5).unwrap();
        assert_eq!(rendered(&b), ["1", "1/2*X+1/2"]);
        let b = prime_power_basis(2, 1, -3).unwrap();
        assert_eq!(rendered(&b), ["1", "1/2*X+1/2"]);
        let b = prime_power_basis(2, 1, 7).unwrap();
        assert_eq!(rendered(&b), ["1", "X"]);
        let b = prime_power_basis(3, 1, 10).unwrap();
        assert_eq!(rendered(&b), ["1", "X", "1/3*X^2+1/3*X+1/3"]);
        let b = prime_power_basis(3, 1, 17).unwrap();
        assert_eq!(rendered(&b), ["1", "X", "1/3*X^2-1/3*X+1/3"]);
        assert_eq!(prime_power_basis(3, 1, 12), Err(Error::NotSquareFree { m: 12, p: 2 }));
    }

    #[test]
    fn degree_nine_family() {
        let b = prime_power_basis(3, 2, 55).unwrap();
        let polys = b.polynomials();
        for (i, poly) in polys.iter().enumerate().take(6) {
            assert_eq!(*poly, QPolynomial::monomial(Rational::one(), i));
        }
        let third = Rational::new(1.into(), 3.into());
        let ninth = Rational::new(1.into(), 9.into());
        assert_eq!(polys[6], QPolynomial::from_integers([1, 0, 0, 1, 0, 0, 1]).scale(&third));
        assert_eq!(polys[7], QPolynomial::from_integers([0, 1, 0, 0, 1, 0, 0, 1]).scale(&third));
        assert_eq!(polys[8], QPolynomial::from_integers([1; 9]).scale(&ninth));
        assert_eq!(b.denominator_product(), BigInt::from(81));
        let minus = prime_power_basis(3, 2, -26).unwrap();
        assert_eq!(minus.polynomials(), polys);
    }

    #[test]
    fn degree_twelve_row_53() {
        let field = PureField::new(12, 53).unwrap();
        let b = construct_basis(&field).unwrap();
        let got = rendered(&b);
        assert_eq!(got[8], "1/6*X^8+1/3*X^4+1/2*X^2+2/3");
        let e = &b.elements()[8];
        assert_eq!(e.denominator(), &BigInt::from(6));
        assert_eq!(e.numerator_coeffs(), [4, 0, 3, 0, 2, 0, 0, 0, 1].map(BigInt::from));
    }

    #[test]
    fn compose_power_bases() {
        let b1 = prime_power_basis(2, 1, 7).unwrap();
        let b2 = prime_power_basis(3, 1, 7).unwrap();
        let c = compose_bases(&b1, &b2).unwrap();
        assert_eq!(c, IntegralBasis::power_basis(PureField::new(6, 7).unwrap()));
        assert_eq!(compose_bases(&b1, &b1), Err(Error::NotCoprime(2, 2)));
        let other = prime_power_basis(3, 1, 10).unwrap();
        assert_eq!(compose_bases(&b1, &other), Err(Error::FieldMismatch));
    }

    #[test]
    fn compose_is_symmetric_in_span() {
        for m in [5i64, 53, -19, 17, 10, 73] {
            let b4 = prime_power_basis(2, 2, m).unwrap();
            let b3 = prime_power_basis(3, 1, m).unwrap();
            let x = compose_bases(&b4, &b3).unwrap();
            let y = compose_bases(&b3, &b4).unwrap();
            assert!(x.same_span(&y), "m = {m}");
            let b2 = prime_power_basis(2, 1, m).unwrap();
            let x = compose_bases(&b2, &b3).unwrap();
            let y = compose_bases(&b3, &b2).unwrap();
            assert!(x.same_span(&y), "m = {m}");
        }
    }

    #[test]
    fn index_reports() {
        let r = index_report(&PureField::new(2, 7).unwrap()).unwrap();
        assert_eq!(r.total_index, BigInt::one());
        assert_eq!(r.field_discriminant, BigInt::from(28));
        assert_eq!(r.poly_discriminant, BigInt::from(28));
        let r = index_report(&PureField::new(9, 55).unwrap()).unwrap();
        assert_eq!(r.per_prime, BTreeMap::from([(3, 4)]));
        assert_eq!(r.total_index, BigInt::from(81));
        assert_eq!(r.polygon[&3], (4, true));
        let r = index_report(&PureField::new(3, 10).unwrap()).unwrap();
        assert_eq!(r.poly_discriminant, BigInt::from(-2700));
        assert_eq!(r.field_discriminant, BigInt::from(-300));
        let r = index_report(&PureField::new(2, 5).unwrap()).unwrap();
        assert_eq!(r.field_discriminant, BigInt::from(5));
    }

    #[test]
    fn field_validation() {
        assert_eq!(PureField::new(1, 5), Err(Error::DegreeTooSmall(1)));
        assert_eq!(PureField::new(3, -1), Err(Error::TrivialRadicand(-1)));
        assert_eq!(PureField::new(3, 18), Err(Error::NotSquareFree { m: 18, p: 3 }));
        assert_eq!(
            PureField::with_bound(3, 1009 * 1013, 100, false),
            Err(Error::SquareFreeUnknown { m: 1009 * 1013, bound: 100 })
        );
        assert!(PureField::with_bound(3, 1009 * 1013, 100, true).is_ok());
    }

    #[test]
    fn basis_element_normalization() {
        let e = BasisElement::new(QPolynomial::from_integers([2, 4]), BigInt::from(6)).unwrap();
        assert_eq!(e.denominator(), &BigInt::from(3));
        assert_eq!(e.numerator(), &QPolynomial::from_integers([1, 2]));
        let b = BasisElement::new(QPolynomial::from_integers([64, 8, 1]), BigInt::from(3)).unwrap();
        assert_eq!(b.balanced().numerator(), &QPolynomial::from_integers([1, -1, 1]));
        assert_eq!(b.least_nonnegative().numerator(), &QPolynomial::from_integers([1, 2, 1]));
        let f = QPolynomial::from_coeffs(vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 2.into())]);
        assert_eq!(BasisElement::from_qpoly(&f).unwrap().denominator(), &BigInt::from(2));
    }

    fn square_free(limit: i64) -> impl Strategy<Value = i64> {
        (-limit..limit).prop_filter("square-free, not 0 or ±1", |&m| {
            matches!(square_free_check(m, 1_000_000), Ok(SquareFreeness::SquareFree))
        })
    }

    proptest! {
        #[test]
        fn denominator_ledger(m in square_free(2000), pk in prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])) {
            let (p, k) = pk;
            let b = prime_power_basis(p, k, m).unwrap();
            let expect = BigInt::from(p).pow(ind_p_closed_form(p, k, m) as u32);
            prop_assert_eq!(b.denominator_product(), expect);
            let n = p.pow(k) as i64;
            let bound = n / n.gcd(&m);
            for e in b.elements() {
                prop_assert!((BigInt::from(bound) % e.denominator()).is_zero());
                prop_assert!(e.denominator().gcd(&BigInt::from(m)).is_one());
            }
        }

        #[test]
        fn index_multiplicativity(m in square_free(500), pair in prop::sample::select(vec![(2u64, 3u64), (4, 3), (2, 5), (3, 5), (2, 9), (8, 3)])) {
            let (n1, n2) = pair;
            let t = |n| index_report(&PureField::new(n, m).unwrap()).unwrap().total_index;
            prop_assert_eq!(t(n1 * n2), t(n1).pow(n2 as u32) * t(n2).pow(n1 as u32));
        }

        #[test]
        fn valuation_stable_under_prime_power_exponent(m in 2i64..1_000_000, p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..=4) {
            prop_assume!(m % p as i64 != 0);
            let mb = BigInt::from(m);
            let a = vp_int(p, &(mb.pow(p as u32) - &mb)).unwrap();
            let b = vp_int(p, &(mb.pow(p.pow(k) as u32) - &mb)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
