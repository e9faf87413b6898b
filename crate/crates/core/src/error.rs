use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial does not have integer coefficients")]
    NotIntegral,
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(u64),
    #[error("m must differ from 0 and ±1, got {0}")]
    TrivialRadicand(i64),
    #[error("m = {m} is divisible by {p}^2")]
    NotSquareFree { m: i64, p: u64 },
    #[error("could not certify that m = {m} is square-free with trial division up to {bound}")]
    SquareFreeUnknown { m: i64, bound: u64 },
    #[error("s undefined for p = {0} dividing m; the Eisenstein branch applies")]
    SUndefined(u64),
    #[error("t = {t} exceeds k = {k}")]
    TOutOfRange { t: u32, k: u32 },
    #[error("{0} is divisible by p")]
    DivisibleByP(i64),
    #[error("degrees {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("basis element {0} does not have degree {0}")]
    NotTriangular(usize),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("basis failed certification: {0}")]
    Uncertified(String),
    #[error("closed-form and Newton polygon p-index disagree at p = {p}: {closed} vs {polygon}")]
    IndexMismatch { p: u64, closed: u64, polygon: u64 },
    #[error("periodicity violated for residue {r}: witnesses {m1} and {m2} give different bases")]
    PeriodicityViolation { r: u64, m1: i64, m2: i64 },
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
