//! Exact arithmetic: big integers and rationals, valuations, polynomials over `Q`
//! and `F_p`, and integer/rational matrices.

mod fp;
mod int;
mod matrix;
mod poly;

pub use fp::{FpExtField, FpPolynomial};
pub(crate) use fp::{fmt_fp_coeffs, inv_mod, mul_mod};
pub use int::{
    crt_pair, factorize, gcd, is_prime, isqrt, lcm, residue, residue_i64, square_free_check, vp_int,
    vp_rational, vp_u64, Integer, Rational, SquareFreeness, DEFAULT_SQUARE_FREE_BOUND,
};
pub use matrix::{charpoly, charpoly_int_coeffs, determinant, determinant_int, hnf, IntMatrix, Matrix, RatMatrix};
pub use poly::{vp_poly, QPolynomial};
