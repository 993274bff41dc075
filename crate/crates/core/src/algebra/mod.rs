//! Exact rational arithmetic: dense univariate polynomials, interpolation,
//! truncated bivariate series and determinants. Nothing here rounds.

mod biseries;
mod interp;
mod matrix;
mod poly;

pub use biseries::BiSeries;
pub use interp::lagrange_interpolate;
pub use matrix::determinant;
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `num / den` as a canonical rational. Panics on a zero denominator; use
/// [`checked_div`] when the divisor is data-dependent.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn checked_div(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// `"num/den"`, the exchange form of a rational.
pub fn rational_to_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}
