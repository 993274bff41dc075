use std::collections::HashSet;

use num_rational::BigRational;

use super::{rational_to_string, Poly};
use crate::error::{Error, Result};

/// The unique polynomial of degree below `points.len()` through the given
/// points, built from Newton divided differences.
pub fn lagrange_interpolate(points: &[(BigRational, BigRational)]) -> Result<Poly> {
    let mut seen = HashSet::with_capacity(points.len());
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::DuplicateAbscissa(rational_to_string(x)));
        }
    }
    let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    let len = dd.len();
    for j in 1..len {
        for i in (j..len).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    let mut poly = Poly::zero();
    for i in (0..len).rev() {
        let factor = Poly::from_coeffs(vec![-xs[i].clone(), BigRational::from_integer(1.into())]);
        poly = &(&poly * &factor) + &Poly::constant(dd[i].clone());
    }
    Ok(poly)
}
