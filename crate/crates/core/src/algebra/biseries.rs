use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{checked_div, Poly};
use crate::error::{Error, Result};

/// Bivariate power series in `u, v`, truncated to the square
/// `0 <= i, j < order`. Products keep exactly the coefficients that
/// are determined by the truncated factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    coeff: Vec<BigRational>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeff: vec![BigRational::zero(); order * order],
        }
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeff[0] = c;
        }
        s
    }

    /// Truncation of the polynomial `sum coeffs[i][j] u^i v^j`.
    pub fn from_coeffs(order: usize, coeffs: &[Vec<BigRational>]) -> Self {
        let mut s = Self::zero(order);
        for (i, row) in coeffs.iter().enumerate().take(order) {
            for (j, c) in row.iter().enumerate().take(order) {
                s.coeff[i * order + j] = c.clone();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `u^i v^j`.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.coeff[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: BigRational) {
        self.coeff[i * self.order + j] = c;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "series orders differ");
        Self {
            order: self.order,
            coeff: self.coeff.iter().zip(&rhs.coeff).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeff: self.coeff.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "series orders differ");
        let n = self.order;
        let mut out = Self::zero(n);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..n - i1 {
                    for j2 in 0..n - j1 {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.coeff[(i1 + i2) * n + j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse. Writing `self = c (1 - e)` with `e` having no
    /// constant term, `1/self = (1/c) sum e^k`, and `e^k` vanishes in the
    /// truncation once `k > 2 (order - 1)`.
    pub fn reciprocal(&self) -> Result<Self> {
        let n = self.order;
        if n == 0 {
            return Ok(self.clone());
        }
        let c = self.coeff[0].clone();
        if c.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_c = checked_div(&BigRational::one(), &c)?;
        let mut e = self.scale(&-&inv_c);
        e.coeff[0] = BigRational::zero();
        let mut acc = Self::constant(n, BigRational::one());
        let mut power = Self::constant(n, BigRational::one());
        for _ in 0..2 * (n - 1) {
            power = power.mul(&e);
            acc = acc.add(&power);
        }
        Ok(acc.scale(&inv_c))
    }

    /// Coefficients of `v^j` as polynomials in `u`, a convenience for
    /// substitutions.
    pub fn column(&self, j: usize) -> Poly {
        Poly::from_coeffs((0..self.order).map(|i| self.get(i, j).clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn geometric_series() {
        // 1 / (1 - u - v) = sum binom(i+j, i) u^i v^j
        let s = BiSeries::from_coeffs(4, &[vec![int(1), int(-1)], vec![int(-1)]]);
        let r = s.reciprocal().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = crate::counting::binomial(i + j, i);
                assert_eq!(r.get(i, j), &BigRational::from_integer(expect.into()));
            }
        }
        let one = s.mul(&r);
        assert_eq!(one, BiSeries::constant(4, int(1)));
    }

    #[test]
    fn mixed_reciprocal() {
        let s = BiSeries::from_coeffs(
            3,
            &[vec![int(2), rat(1, 3), int(5)], vec![int(-1), int(7)], vec![rat(1, 2)]],
        );
        assert_eq!(s.mul(&s.reciprocal().unwrap()), BiSeries::constant(3, int(1)));
        assert_eq!(s.column(0), Poly::from_coeffs(vec![int(2), int(-1), rat(1, 2)]));
    }

    #[test]
    fn zero_constant_term() {
        let s = BiSeries::from_coeffs(2, &[vec![int(0), int(1)]]);
        assert_eq!(s.reciprocal(), Err(Error::ZeroConstantTerm));
    }
}
