//! Period modulus, per-residue basis atlas, and periodicity checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactmath::{factorize, residue_i64, square_free_check, QPolynomial, SquareFreeness};
use crate::oracle::CertifyOptions;
use crate::purebasis::{integral_basis_with, PureField};

/// `n0 = Π p^(k+1)` over `n = Π p^k`.
pub fn period_modulus(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, k)| p.pow(k + 1)).product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// Some `p | n` has `p^2` dividing both `r` and `n0`.
    NoSquareFreeMembers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricRow {
    pub witness: i64,
    /// The next square-free class member, whose basis matched literally; `None` if the scan found only one.
    pub second_witness: Option<i64>,
    pub basis: Vec<QPolynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtlasRow {
    Basis(ParametricRow),
    Skip(SkipReason),
    /// No square-free witness with `|m| ≤ bound`.
    Unknown { bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodAtlas {
    pub n: u64,
    pub n0: u64,
    pub rows: BTreeMap<u64, AtlasRow>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtlasOptions {
    /// Witnesses are searched among `|m| ≤ scan_bound`; `None` means `10 * n0`.
    pub scan_bound: Option<u64>,
    pub certify: CertifyOptions,
}

/// Square-free members of the class `r mod n0` with `2 ≤ |m| ≤ bound`, by increasing `|m|`, positive first.
pub fn class_witnesses(r: u64, n0: u64, bound: u64) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    let (r, n0, bound) = (r as i128, n0 as i128, bound as i128);
    let mut m = r - n0 * ((r + bound) / n0);
    while m <= bound {
        if m.abs() >= 2 && m.abs() <= bound {
            out.push(m as i64);
        }
        m += n0;
    }
    out.retain(|&m| matches!(square_free_check(m, u64::MAX), Ok(SquareFreeness::SquareFree)));
    out.sort_by_key(|&m| (m.unsigned_abs(), m < 0));
    out
}

fn class_is_empty(n: u64, r: u64) -> bool {
    factorize(n).iter().any(|&(p, _)| r.is_multiple_of(p * p))
}

fn basis_polys(n: u64, m: i64, options: &CertifyOptions) -> Result<Vec<QPolynomial>> {
    let field = PureField::new(n, m)?;
    Ok(integral_basis_with(&field, options)?.0.polynomials())
}

pub fn atlas_row(n: u64, r: u64, options: &AtlasOptions) -> Result<AtlasRow> {
    let n0 = period_modulus(n);
    if r >= n0 {
        return Err(Error::Precondition(format!("residue {r} is not below {n0}")));
    }
    if class_is_empty(n, r) {
        return Ok(AtlasRow::Skip(SkipReason::NoSquareFreeMembers));
    }
    let bound = options.scan_bound.unwrap_or(10 * n0);
    let witnesses = class_witnesses(r, n0, bound);
    let Some(&witness) = witnesses.first() else {
        return Ok(AtlasRow::Unknown { bound });
    };
    let basis = basis_polys(n, witness, &options.certify)?;
    let second_witness = witnesses.get(1).copied();
    if let Some(m2) = second_witness {
        if basis_polys(n, m2, &options.certify)? != basis {
            return Err(Error::PeriodicityViolation { r, m1: witness, m2 });
        }
    }
    Ok(AtlasRow::Basis(ParametricRow { witness, second_witness, basis }))
}

pub fn atlas(n: u64, options: &AtlasOptions) -> Result<PeriodAtlas> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let n0 = period_modulus(n);
    let rows = (0..n0).map(|r| Ok((r, atlas_row(n, r, options)?))).collect::<Result<_>>()?;
    Ok(PeriodAtlas { n, n0, rows })
}

/// Both square-free radicands in the class of `r` give literally the same basis polynomials.
pub fn verify_periodicity(n: u64, r: u64, m1: i64, m2: i64) -> Result<bool> {
    verify_periodicity_with(n, r, m1, m2, &CertifyOptions::default())
}

pub fn verify_periodicity_with(n: u64, r: u64, m1: i64, m2: i64, options: &CertifyOptions) -> Result<bool> {
    let n0 = period_modulus(n);
    for m in [m1, m2] {
        if residue_i64(m, n0) != r {
            return Err(Error::Precondition(format!("{m} is not congruent to {r} modulo {n0}")));
        }
    }
    Ok(basis_polys(n, m1, options)? == basis_polys(n, m2, options)?)
}
