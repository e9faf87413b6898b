//! Independent checks on claimed bases: integrality through characteristic
//! polynomials, traces, discriminants, ring closure and p-maximality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    charpoly, charpoly_int_coeffs, determinant, is_prime, mul_mod, IntMatrix, QPolynomial, RatMatrix, Rational,
};
use crate::purebasis::{index_report, IntegralBasis, PureField};

/// An element of `Q(α)` in power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: PureField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn new(field: PureField, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::Precondition(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(Self { field, coords })
    }

    /// `f(α)`, reducing with `α^n = m`.
    pub fn from_poly(field: &PureField, f: &QPolynomial) -> Self {
        let n = field.degree();
        let m = Rational::from_integer(BigInt::from(field.m()));
        let mut coords = vec![Rational::zero(); n];
        for (i, c) in f.coeffs().iter().enumerate() {
            let mut c = c.clone();
            for _ in 0..i / n {
                c *= &m;
            }
            coords[i % n] += c;
        }
        Self { field: field.clone(), coords }
    }

    pub fn one(field: &PureField) -> Self {
        Self::from_poly(field, &QPolynomial::one())
    }

    pub fn field(&self) -> &PureField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_qpoly(&self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coords.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_poly(&self.field, &(&self.to_qpoly() * &other.to_qpoly())))
    }

    /// `Tr(α^j)` is `n` for `j = 0` and vanishes for `0 < j < n`.
    pub fn trace(&self) -> Rational {
        &self.coords[0] * Rational::from_integer(BigInt::from(self.field.n()))
    }

    /// `Tr(e * α^i)` for `i = 0..n`.
    pub fn dual_basis_coords(&self) -> Vec<Rational> {
        let n = self.field.degree();
        let nq = Rational::from_integer(BigInt::from(self.field.n()));
        let m = Rational::from_integer(BigInt::from(self.field.m()));
        // constant coordinate of e * α^i is c_0 for i = 0 and m * c_(n-i) otherwise
        (0..n)
            .map(|i| if i == 0 { &self.coords[0] * &nq } else { &self.coords[n - i] * &m * &nq })
            .collect()
    }

    /// Matrix of `x -> e*x` on the power basis; column `j` holds `e * α^j`.
    pub fn multiplication_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        let m = Rational::from_integer(BigInt::from(self.field.m()));
        let mut a = RatMatrix::zeros(n, n);
        for j in 0..n {
            for (i, c) in self.coords.iter().enumerate() {
                if i + j < n {
                    a[(i + j, j)] = c.clone();
                } else {
                    a[(i + j - n, j)] = c * &m;
                }
            }
        }
        a
    }

    pub fn charpoly(&self) -> QPolynomial {
        charpoly(&self.multiplication_matrix()).expect("square matrix")
    }

    /// Complete test: the characteristic polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.charpoly().is_integral()
    }
}

fn element_of(basis: &IntegralBasis, i: usize) -> FieldElement {
    FieldElement::from_poly(basis.field(), &basis.elements()[i].to_qpoly())
}

/// Coordinates of `v` in the triangular basis.
fn solve_triangular(basis: &IntegralBasis, v: &[Rational]) -> Vec<Rational> {
    let n = v.len();
    let rows: Vec<Vec<Rational>> = basis.elements().iter().map(|e| e.coords(n)).collect();
    let mut v = v.to_vec();
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = &v[i] / &rows[i][i];
        for (vj, rj) in v.iter_mut().zip(&rows[i]).take(i + 1) {
            *vj -= &c * rj;
        }
        x[i] = c;
    }
    x
}

/// Multiplication table `b_i b_j = Σ_k c[i][j][k] b_k`; `None` when some entry is not an integer.
pub fn structure_constants(basis: &IntegralBasis) -> Option<Vec<Vec<Vec<BigInt>>>> {
    let n = basis.field().degree();
    let elems: Vec<_> = (0..n).map(|i| element_of(basis, i)).collect();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = elems[i].mul(&elems[j]).expect("same field");
            let x = solve_triangular(basis, prod.coords());
            let ints: Option<Vec<BigInt>> = x.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
            let ints = ints?;
            table[j][i] = ints.clone();
            table[i][j] = ints;
        }
    }
    Some(table)
}

/// All pairwise products of basis elements have integer coordinates.
pub fn ring_closed(basis: &IntegralBasis) -> bool {
    structure_constants(basis).is_some()
}

/// Exact discriminant of the basis, from the triangular transition matrix and
/// confirmed against `det[Tr(b_i b_j)]`.
pub fn basis_discriminant(basis: &IntegralBasis) -> Result<Rational> {
    let n = basis.field().degree();
    let elems: Vec<_> = (0..n).map(|i| element_of(basis, i)).collect();
    let mut gram = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = elems[i].mul(&elems[j])?.trace();
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let by_gram = determinant(&gram)?;
    let diag: Rational = elems.iter().enumerate().map(|(i, e)| e.coords()[i].clone()).product();
    let triangular = Rational::from_integer(basis.field().poly_discriminant()) * &diag * &diag;
    if triangular != by_gram {
        return Err(Error::Precondition(format!(
            "discriminant mismatch: triangular {triangular}, Gram {by_gram}"
        )));
    }
    Ok(by_gram)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalityStrategy {
    /// Candidates `x/p` with `x` in `pO`-classes of the radical intersected with its annihilator.
    Reduced,
    /// Every nonzero residue vector in `[0, p)^n`.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Largest number of candidates enumerated per prime.
    pub budget: u64,
    pub strategy: MaximalityStrategy,
}

pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_ENUM_BUDGET, strategy: MaximalityStrategy::Reduced }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityOutcome {
    Proved,
    CounterexampleFound(FieldElement),
    Skipped(String),
}

pub fn p_maximality_enum(basis: &IntegralBasis, p: u64) -> Result<MaximalityOutcome> {
    p_maximality_enum_with(basis, p, &CertifyOptions::default())
}

pub fn p_maximality_enum_with(basis: &IntegralBasis, p: u64, options: &CertifyOptions) -> Result<MaximalityOutcome> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let Some(table) = structure_constants(basis) else {
        return Ok(MaximalityOutcome::Skipped("basis does not span a ring".into()));
    };
    let n = basis.field().degree();
    let mut unit = vec![Rational::zero(); n];
    unit[0] = Rational::one();
    let one: Option<Vec<BigInt>> =
        solve_triangular(basis, &unit).iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
    let Some(one) = one else {
        return Ok(MaximalityOutcome::Skipped("basis does not span a ring with 1".into()));
    };
    let ctx = Enumerator::new(basis, &table, &one, p);
    match options.strategy {
        MaximalityStrategy::Exhaustive => {
            let total = (p as u128).pow(n as u32) - 1;
            if total > u128::from(options.budget) {
                return Ok(skip_budget(total, options.budget));
            }
            let mut x = vec![0u64; n];
            loop {
                // odometer increment; stops after wrapping back to zero
                let mut i = 0;
                while i < n {
                    x[i] += 1;
                    if x[i] < p {
                        break;
                    }
                    x[i] = 0;
                    i += 1;
                }
                if i == n {
                    return Ok(MaximalityOutcome::Proved);
                }
                if let Some(found) = ctx.test(basis, &x)? {
                    return Ok(MaximalityOutcome::CounterexampleFound(found));
                }
            }
        }
        MaximalityStrategy::Reduced => {
            let space = ctx.radical_annihilator();
            let d = space.len();
            let total = ((p as u128).pow(d as u32) - 1) / (p as u128 - 1);
            if total > u128::from(options.budget) {
                return Ok(skip_budget(total, options.budget));
            }
            // projective points: first nonzero coordinate equal to 1
            for lead in 0..d {
                let free = d - lead - 1;
                let mut lambda = vec![0u64; free];
                loop {
                    let mut x = space[lead].clone();
                    for (l, &c) in lambda.iter().enumerate() {
                        for (xi, si) in x.iter_mut().zip(&space[lead + 1 + l]) {
                            *xi = (*xi + mul_mod(c, *si, p)) % p;
                        }
                    }
                    if let Some(found) = ctx.test(basis, &x)? {
                        return Ok(MaximalityOutcome::CounterexampleFound(found));
                    }
                    let mut i = 0;
                    while i < free {
                        lambda[i] += 1;
                        if lambda[i] < p {
                            break;
                        }
                        lambda[i] = 0;
                        i += 1;
                    }
                    if i == free {
                        break;
                    }
                }
            }
            Ok(MaximalityOutcome::Proved)
        }
    }
}

fn skip_budget(total: u128, budget: u64) -> MaximalityOutcome {
    MaximalityOutcome::Skipped(format!("{total} candidates exceed the enumeration budget {budget}"))
}

struct Enumerator {
    p: u64,
    n: usize,
    /// Structure constants reduced mod `p`.
    table_p: Vec<Vec<Vec<u64>>>,
    /// Exact structure constants.
    table: Vec<Vec<Vec<BigInt>>>,
    /// Trace form `Tr(b_i b_j) mod p`.
    gram_p: Vec<Vec<u64>>,
    /// `p^n` when it fits comfortably in 64 bits.
    modulus: Option<u64>,
    /// Coordinates of `1` mod `p`.
    one_p: Vec<u64>,
}

fn reduce_u64(a: &BigInt, p: u64) -> u64 {
    let r = a % BigInt::from(p);
    let r = if r < BigInt::zero() { r + p } else { r };
    r.to_u64().expect("residue")
}

impl Enumerator {
    fn new(basis: &IntegralBasis, table: &[Vec<Vec<BigInt>>], one: &[BigInt], p: u64) -> Self {
        let n = basis.field().degree();
        let table_p =
            table.iter().map(|row| row.iter().map(|v| v.iter().map(|c| reduce_u64(c, p)).collect()).collect()).collect();
        let traces: Vec<BigInt> =
            (0..n).map(|k| element_of(basis, k).trace().to_integer()).collect();
        let gram_p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t: BigInt = (0..n).map(|k| &table[i][j][k] * &traces[k]).sum();
                        reduce_u64(&t, p)
                    })
                    .collect()
            })
            .collect();
        let modulus = (p as u128).checked_pow(n as u32).filter(|&q| q < 1 << 62).map(|q| q as u64);
        let one_p = one.iter().map(|c| reduce_u64(c, p)).collect();
        Self { p, n, table_p, table: table.to_vec(), gram_p, modulus, one_p }
    }

    fn mul_p(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = mul_mod(xi, yj, p);
                for (o, &t) in out.iter_mut().zip(&self.table_p[i][j]) {
                    *o = (*o + mul_mod(c, t, p)) % p;
                }
            }
        }
        out
    }

    fn pow_p(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one_p.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_p(&acc, &base);
            }
            base = self.mul_p(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Basis of `J ∩ Ann(J)` in `O/pO`, `J` the nilradical.
    fn radical_annihilator(&self) -> Vec<Vec<u64>> {
        let (p, n) = (self.p, self.n);
        let frob: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                self.pow_p(&e, p)
            })
            .collect();
        let mut power = frob.clone();
        let mut reach = p as u128;
        while reach < n as u128 {
            power = mat_mul_p(&power, &frob, p);
            reach *= p as u128;
        }
        // x ∈ J  <=>  x · F^j = 0
        let radical = nullspace_p(&transpose(&power), p);
        if radical.is_empty() {
            return radical;
        }
        // λ · V · L(v_l) = 0 for every radical generator v_l
        let mut cols: Vec<Vec<u64>> = vec![Vec::new(); radical.len()];
        for v in &radical {
            for (a, row) in radical.iter().enumerate() {
                cols[a].extend(self.mul_p(row, v));
            }
        }
        nullspace_p(&transpose(&cols), p)
            .into_iter()
            .map(|lambda| {
                let mut x = vec![0u64; n];
                for (l, v) in lambda.iter().zip(&radical) {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi = (*xi + mul_mod(*l, *vi, p)) % p;
                    }
                }
                x
            })
            .collect()
    }

    /// `Σ x_i b_i / p` if integral.
    fn test(&self, basis: &IntegralBasis, x: &[u64]) -> Result<Option<FieldElement>> {
        let (p, n) = (self.p, self.n);
        // trace filter: Tr(x b_j) ≡ 0 mod p
        for j in 0..n {
            let t = (0..n).fold(0u64, |acc, i| (acc + mul_mod(x[i], self.gram_p[i][j], p)) % p);
            if t != 0 {
                return Ok(None);
            }
        }
        // characteristic polynomial of multiplication by x on the basis: need p^j | c_j
        let integral = match self.modulus {
            Some(q) => {
                let mat: Vec<Vec<u64>> = (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|j| {
                                (0..n).fold(0u64, |acc, i| {
                                    (acc + mul_mod(x[i] % q, reduce_u64(&self.table[i][j][k], q), q)) % q
                                })
                            })
                            .collect()
                    })
                    .collect();
                let c = berkowitz_mod(&mat, q);
                let mut pj = 1u64;
                c.iter().all(|&cj| {
                    let ok = cj % pj == 0;
                    pj = pj.saturating_mul(p);
                    ok
                })
            }
            None => {
                let rows = (0..n)
                    .map(|k| {
                        (0..n).map(|j| (0..n).map(|i| BigInt::from(x[i]) * &self.table[i][j][k]).sum()).collect()
                    })
                    .collect();
                let c = charpoly_int_coeffs(&IntMatrix::from_rows(rows))?;
                let pb = BigInt::from(p);
                let mut pj = BigInt::one();
                c.iter().all(|cj| {
                    let ok = (cj % &pj).is_zero();
                    pj *= &pb;
                    ok
                })
            }
        };
        if !integral {
            return Ok(None);
        }
        let field = basis.field();
        let inv_p = Rational::new(BigInt::one(), BigInt::from(p));
        let mut y = QPolynomial::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                y = &y + &basis.elements()[i].to_qpoly().scale(&Rational::from_integer(BigInt::from(xi)));
            }
        }
        let y = FieldElement::from_poly(field, &y.scale(&inv_p));
        if !y.is_algebraic_integer() {
            return Err(Error::Precondition("modular and exact integrality tests disagree".into()));
        }
        Ok(Some(y))
    }
}

fn transpose(a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

fn mat_mul_p(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len()).map(|j| row.iter().zip(b).fold(0, |acc, (&x, r)| (acc + mul_mod(x, r[j], p)) % p)).collect()
        })
        .collect()
}

/// Basis of `{y : A y = 0}` over `F_p`.
fn nullspace_p(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = crate::exactmath::inv_mod(m[row][col], p).expect("p prime");
        for x in m[row].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line[col] != 0 {
                let f = line[col];
                for (x, &y) in line.iter_mut().zip(&pivot) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Berkowitz recurrence modulo `q`; returns `[c_0 = 1, c_1, ..., c_n]`.
fn berkowitz_mod(m: &[Vec<u64>], q: u64) -> Vec<u64> {
    let n = m.len();
    let neg = |x: u64| (q - x % q) % q;
    let mut vect = vec![1 % q];
    for r in 0..n {
        let mut qv = Vec::with_capacity(r + 2);
        qv.push(1 % q);
        qv.push(neg(m[r][r]));
        let mut v: Vec<u64> = (0..r).map(|i| m[i][r]).collect();
        for k in 0..r {
            let dot = (0..r).fold(0u64, |acc, j| (acc + mul_mod(m[r][j], v[j], q)) % q);
            qv.push(neg(dot));
            if k + 1 < r {
                v = (0..r).map(|i| (0..r).fold(0u64, |acc, j| (acc + mul_mod(m[i][j], v[j], q)) % q)).collect();
            }
        }
        vect = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| i - j < qv.len())
                    .fold(0u64, |acc, j| (acc + mul_mod(qv[i - j], vect[j], q)) % q)
            })
            .collect();
    }
    vect
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub integrality: Vec<bool>,
    pub ring_closed: bool,
    pub disc_match: bool,
    pub maximality: BTreeMap<u64, MaximalityOutcome>,
}

impl CertificationReport {
    /// Every check passed or was explicitly skipped.
    pub fn certified(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn has_skips(&self) -> bool {
        self.maximality.values().any(|o| matches!(o, MaximalityOutcome::Skipped(_)))
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, ok) in self.integrality.iter().enumerate() {
            if !ok {
                out.push(format!("element {i} is not an algebraic integer"));
            }
        }
        if !self.ring_closed {
            out.push("basis is not closed under multiplication".into());
        }
        if !self.disc_match {
            out.push("discriminant differs from the closed-form field discriminant".into());
        }
        for (p, o) in &self.maximality {
            if let MaximalityOutcome::CounterexampleFound(e) = o {
                out.push(format!("not {p}-maximal: {} is integral", e.to_qpoly()));
            }
        }
        out
    }
}

pub fn certify(basis: &IntegralBasis, options: &CertifyOptions) -> Result<CertificationReport> {
    let field = basis.field();
    let n = field.degree();
    let integrality: Vec<bool> = (0..n).map(|i| element_of(basis, i).is_algebraic_integer()).collect();
    let ring_closed = ring_closed(basis);
    let report = index_report(field)?;
    let disc_match = basis_discriminant(basis).is_ok_and(|d| d == Rational::from_integer(report.field_discriminant));
    let mut maximality = BTreeMap::new();
    for &(p, _) in field.factors() {
        let outcome = if integrality.iter().all(|&b| b) && ring_closed {
            p_maximality_enum_with(basis, p, options)?
        } else {
            MaximalityOutcome::Skipped("basis does not span an order".into())
        };
        maximality.insert(p, outcome);
    }
    Ok(CertificationReport { integrality, ring_closed, disc_match, maximality })
}
