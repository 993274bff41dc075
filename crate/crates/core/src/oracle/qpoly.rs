use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{g_eval, t_equal_confluent};
use crate::algebra::{int, lagrange_interpolate, rational_to_string, Poly};
use crate::error::{Error, Result};

/// `q_{n-1}(z)` for a lattice of size `n`; the polynomial has degree
/// `n(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPolynomial {
    pub n: usize,
    #[serde(serialize_with = "poly_as_strings")]
    pub poly: Poly,
}

fn poly_as_strings<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_strings().serialize(s)
}

impl QPolynomial {
    /// Wraps `poly` after checking the structural invariants: integer
    /// coefficients, degree `n(n-1)`, evenness, `q(0) = 1` and
    /// `q(1) = 2^(n(n-1))`.
    pub fn new(n: usize, poly: Poly) -> Result<Self> {
        let d = n * n.saturating_sub(1);
        let fail = |what: &str| Err(Error::Consistency(format!("q for n = {n}: {what} (got {poly})")));
        if poly.integer_coeffs().is_none() {
            return fail("non-integral coefficient");
        }
        if poly.degree() != Some(d) {
            return fail("wrong degree");
        }
        if !poly.is_even() {
            return fail("odd coefficient present");
        }
        if !poly.coeff(0).is_one() {
            return fail("constant term is not 1");
        }
        if poly.evaluate(&int(1)) != BigRational::from_integer(BigInt::from(2).pow(d as u32)) {
            return fail("q(1) differs from 2^(n(n-1))");
        }
        Ok(Self { n, poly })
    }

    pub fn degree(&self) -> usize {
        self.n * (self.n - 1)
    }

    /// Coefficients low to high, as integers.
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.poly.integer_coeffs().expect("validated at construction")
    }
}

/// Evaluates `q_{n-1}(z) = (2z^3/(1+z))^(n(n-1)) T(1/z, ..., 1/z)` with
/// `psi = (1-z)/(2z)`.
pub fn q_eval(n: usize, z: &BigRational) -> Result<BigRational> {
    let singular = || Error::SingularZ { z: rational_to_string(z) };
    if z.is_zero() || *z == -BigRational::one() {
        return Err(singular());
    }
    let c = z.recip();
    let psi = (int(1) - z) / (z * int(2));
    if g_eval(&c, &c, &psi).is_zero() {
        return Err(singular());
    }
    let t = t_equal_confluent(n, &c, &psi)?;
    let prefactor = z * z * z * int(2) / (z + int(1));
    Ok(num_traits::pow(prefactor, n * (n - 1)) * t)
}

/// Reconstructs `q_{n-1}` by interpolation in `w = z^2` at the nodes
/// `z = 2, 3, ...`, with one surplus node checked before returning.
pub fn q_poly(n: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let needed = n * (n - 1) / 2 + 2;
    let mut points: Vec<(BigRational, BigRational)> = Vec::with_capacity(needed);
    let mut next = 2i64;
    while points.len() < needed {
        let batch: Vec<i64> = (next..next + (needed - points.len()) as i64).collect();
        next += batch.len() as i64;
        let vals: Vec<Result<(BigRational, BigRational)>> = batch
            .par_iter()
            .map(|&z| {
                let z = int(z);
                q_eval(n, &z).map(|v| (&z * &z, v))
            })
            .collect();
        for v in vals {
            match v {
                Ok(p) => points.push(p),
                Err(Error::SingularZ { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let (held_w, held_v) = points.pop().expect("surplus node");
    let in_w = lagrange_interpolate(&points)?;
    if in_w.evaluate(&held_w) != held_v {
        return Err(Error::Consistency(format!(
            "q for n = {n}: surplus node w = {held_w} disagrees with the interpolant"
        )));
    }
    QPolynomial::new(n, in_w.in_square())
}
