//! The symmetric polynomial `T(x_1, ..., x_2n)` built from the kernel `G`, its
//! value at equal arguments, and the polynomials `q_{n-1}(z)` defined from it.

mod qpoly;

pub use qpoly::{q_eval, q_poly, QPolynomial};

use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::algebra::{determinant, int, lagrange_interpolate, rational_to_string, BiSeries};
use crate::counting::binomial;
use crate::error::{Error, Result};

/// Coefficients `g[i][j]` of `x^i y^j` in `G(x, y)`.
fn g_coeffs(psi: &BigRational) -> [[BigRational; 3]; 3] {
    let z = BigRational::zero;
    let cubic = psi + int(2);
    let linear = psi * (psi * int(2) + int(1));
    let mixed = -(psi * psi + psi * int(3) + int(1)) * int(2);
    let square = -psi.clone();
    [
        [z(), linear.clone(), square.clone()],
        [linear, mixed, cubic.clone()],
        [square, cubic, z()],
    ]
}

/// `G(x, y) = (psi+2)xy(x+y) + psi(2psi+1)(x+y) - 2(psi^2+3psi+1)xy - psi(x^2+y^2)`.
pub fn g_eval(x: &BigRational, y: &BigRational, psi: &BigRational) -> BigRational {
    g_generic(x.clone(), y.clone(), psi.clone())
}

/// `G` over any number field, e.g. complex `psi` from theta functions.
pub fn g_generic<T: Num + Clone>(x: T, y: T, psi: T) -> T {
    let one = T::one();
    let two = one.clone() + one.clone();
    let three = two.clone() + one.clone();
    let xy = x.clone() * y.clone();
    let s = x.clone() + y.clone();
    (psi.clone() + two.clone()) * xy.clone() * s.clone()
        + psi.clone() * (two.clone() * psi.clone() + one.clone()) * s
        - two * (psi.clone() * psi.clone() + three * psi.clone() + one) * xy
        - psi * (x.clone() * x + y.clone() * y)
}

/// `G(c + u, c + v)` as a bivariate series truncated at `order`.
pub fn g_shifted_series(c: &BigRational, psi: &BigRational, order: usize) -> BiSeries {
    let g = g_coeffs(psi);
    let cpow: Vec<BigRational> = (0..3).map(|k| num_traits::pow(c.clone(), k)).collect();
    let binom = |n: usize, k: usize| BigRational::from_integer(binomial(n, k).into());
    let mut s = BiSeries::zero(order);
    for a in 0..order.min(3) {
        for b in 0..order.min(3) {
            let mut acc = BigRational::zero();
            for (i, row) in g.iter().enumerate().skip(a) {
                for (j, gij) in row.iter().enumerate().skip(b) {
                    if !gij.is_zero() {
                        acc += gij * binom(i, a) * binom(j, b) * &cpow[i - a] * &cpow[j - b];
                    }
                }
            }
            s.set(a, b, acc);
        }
    }
    s
}

fn singular(c: &BigRational, psi: &BigRational) -> Error {
    Error::SingularPoint {
        c: rational_to_string(c),
        psi: rational_to_string(psi),
    }
}

/// `T(c, ..., c)` with `2n` equal arguments.
///
/// Both Vandermonde factors vanish at equal arguments, so the quotient is
/// taken as a confluent limit: with `F(u, v) = 1/G(c+u, c+v)`, the value is
/// `G(c,c)^(n^2) det[F_ab]` over the Taylor coefficients `0 <= a, b < n`.
pub fn t_equal_confluent(n: usize, c: &BigRational, psi: &BigRational) -> Result<BigRational> {
    let gcc = g_eval(c, c, psi);
    if gcc.is_zero() {
        return Err(singular(c, psi));
    }
    let f = g_shifted_series(c, psi, n).reciprocal()?;
    let m = (0..n)
        .map(|a| (0..n).map(|b| f.get(a, b).clone()).collect())
        .collect();
    Ok(num_traits::pow(gcc, n * n) * determinant(m))
}

/// Literal evaluation of `T` at `2n` distinct arguments.
pub fn t_distinct_raw(xs: &[BigRational], psi: &BigRational) -> Result<BigRational> {
    assert!(xs.len().is_multiple_of(2), "T takes an even number of arguments");
    let n = xs.len() / 2;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return Err(Error::CoincidentArguments(i + 1, j + 1));
            }
        }
    }
    let (x, y) = xs.split_at(n);
    let mut prod = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, yi) in y.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let g = g_eval(xj, yi, psi);
            if g.is_zero() {
                return Err(Error::VanishingKernel { j: j + 1, i: n + i + 1 });
            }
            m[i][j] = g.recip();
            prod *= g;
        }
    }
    let vandermonde = |v: &[BigRational]| {
        let mut d = BigRational::one();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d *= &v[j] - &v[i];
            }
        }
        d
    };
    Ok(prod * determinant(m) / (vandermonde(x) * vandermonde(y)))
}

/// Independent route to `T(c, ..., c)`: restrict `T` to the line
/// `x_k = c + k t`, interpolate in `t` from distinct-argument evaluations and
/// read off the value at `t = 0`. One held-out node guards the degree bound.
pub fn t_equal_line_oracle(n: usize, c: &BigRational, psi: &BigRational) -> Result<BigRational> {
    if g_eval(c, c, psi).is_zero() {
        return Err(singular(c, psi));
    }
    let needed = 6 * n * n + 2;
    let mut points = Vec::with_capacity(needed);
    let mut t = 0i64;
    while points.len() < needed {
        t += 1;
        let tt = int(t);
        let xs: Vec<BigRational> = (1..=2 * n as i64).map(|k| c + int(k) * &tt).collect();
        match t_distinct_raw(&xs, psi) {
            Ok(v) => points.push((tt, v)),
            Err(Error::VanishingKernel { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let (held_x, held_y) = points.pop().expect("at least two nodes");
    let g = lagrange_interpolate(&points)?;
    if g.evaluate(&held_x) != held_y {
        return Err(Error::Consistency(format!(
            "line oracle for n = {n}: held-out node t = {held_x} disagrees with the interpolant"
        )));
    }
    Ok(g.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn g_values() {
        assert_eq!(g_eval(&int(1), &int(1), &int(0)), int(2));
        assert_eq!(g_eval(&int(2), &int(3), &int(0)), int(48));
        for psi in [rat(-3, 2), rat(5, 7), int(4)] {
            let expect = (&psi - int(1)) * (&psi - int(1)) * int(2);
            assert_eq!(g_eval(&int(1), &int(1), &psi), expect);
            assert_eq!(
                g_eval(&rat(2, 3), &rat(-7, 5), &psi),
                g_eval(&rat(-7, 5), &rat(2, 3), &psi)
            );
        }
    }

    #[test]
    fn shifted_series_matches_expansion() {
        let (c, psi) = (rat(3, 2), rat(-2, 5));
        let s = g_shifted_series(&c, &psi, 4);
        for (u, v) in [(int(1), int(2)), (rat(1, 3), rat(-4, 7)), (int(-2), int(0))] {
            let mut acc = BigRational::zero();
            for a in 0..4 {
                for b in 0..4 {
                    acc += s.get(a, b) * num_traits::pow(u.clone(), a) * num_traits::pow(v.clone(), b);
                }
            }
            assert_eq!(acc, g_eval(&(&c + &u), &(&c + &v), &psi));
        }
    }

    #[test]
    fn confluent_anchors() {
        assert_eq!(t_equal_confluent(1, &rat(3, 5), &rat(1, 4)).unwrap(), int(1));
        assert_eq!(t_equal_confluent(2, &int(1), &int(0)).unwrap(), int(4));
        assert_eq!(
            t_equal_confluent(2, &int(1), &int(1)),
            Err(Error::SingularPoint { c: "1/1".into(), psi: "1/1".into() })
        );
    }

    #[test]
    fn distinct_raw() {
        assert_eq!(t_distinct_raw(&[rat(1, 3), int(5)], &rat(2, 7)).unwrap(), int(1));
        let psi = rat(3, 5);
        let xs = [int(1), int(2), int(3), int(4)];
        let base = t_distinct_raw(&xs, &psi).unwrap();
        let swapped = t_distinct_raw(&[int(2), int(1), int(4), int(3)], &psi).unwrap();
        assert_eq!(base, swapped);
        // T is symmetric in all arguments, not only within blocks.
        let across = t_distinct_raw(&[int(3), int(2), int(1), int(4)], &psi).unwrap();
        assert_eq!(base, across);
        assert_eq!(
            t_distinct_raw(&[int(1), int(2), int(1), int(4)], &psi),
            Err(Error::CoincidentArguments(1, 3))
        );
    }

    #[test]
    fn distinct_raw_regression() {
        let xs = [int(1), int(2), int(3), int(4)];
        assert_eq!(t_distinct_raw(&xs, &int(0)).unwrap(), int(REGRESSION_N2_PSI0));
    }

    const REGRESSION_N2_PSI0: i64 = 96;

    #[test]
    fn line_oracle_agrees() {
        assert_eq!(t_equal_line_oracle(1, &rat(3, 5), &rat(1, 4)).unwrap(), int(1));
        assert_eq!(t_equal_line_oracle(2, &int(1), &int(0)).unwrap(), int(4));
        for (c, psi) in [(rat(3, 2), rat(-2, 5)), (int(-2), rat(7, 3))] {
            assert_eq!(
                t_equal_line_oracle(2, &c, &psi).unwrap(),
                t_equal_confluent(2, &c, &psi).unwrap()
            );
        }
    }
}
