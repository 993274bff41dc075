use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Recorder, Report, WeightTriple};
use crate::algebra::{int, lagrange_interpolate, Poly};
use crate::counting::{binomial, CountTable};
use crate::error::{Error, Result};
use crate::oracle::QPolynomial;

/// `T(z) = (3z^2+1)^3 / (z(z^2-1))^2`.
fn t_of_z(z: &BigRational) -> BigRational {
    let num = z * z * int(3) + int(1);
    let den = z * (z * z - int(1));
    num_traits::pow(num, 3) / (&den * &den)
}

/// `Q(T(z))` read off from `q` by the branch division.
fn q_over_branch(q: &QPolynomial, z: &BigRational) -> BigRational {
    let n = q.n;
    let zz = z * (z * z - int(1));
    let value = q.poly.evaluate(z);
    if n % 3 == 2 {
        value / ((z * z * int(3) + int(1)) * num_traits::pow(zz, (n * n - n - 2) / 3))
    } else {
        value / num_traits::pow(zz, (n * n - n) / 3)
    }
}

/// The polynomial `Q` with `Q(T(z))` equal to `q_{n-1}(z)` divided by the
/// branch factor. It is interpolated from the nodes `z = 2, 3, ...`; the last
/// three nodes are held out and must fit exactly.
pub fn theorem_polynomial(q: &QPolynomial) -> Result<Poly> {
    let n = q.n;
    let nodes = (n * n - n) / 3 + 4;
    let points: Vec<(BigRational, BigRational)> = (2..2 + nodes as i64)
        .map(|z| {
            let z = int(z);
            (t_of_z(&z), q_over_branch(q, &z))
        })
        .collect();
    let (fit, held) = points.split_at(nodes - 3);
    let poly = lagrange_interpolate(fit)?;
    for (t, v) in held {
        if &poly.evaluate(t) != v {
            return Err(Error::Consistency(format!(
                "Q(T) for n = {n} misses the surplus node T = {t}"
            )));
        }
    }
    Ok(poly)
}

/// Right-hand side of the main identity for `m` positive turns.
pub fn theorem_rhs(n: usize, m: usize, w: &WeightTriple, big_q: &Poly) -> BigRational {
    let [t0, t1, t2] = &w.t;
    let e3 = t0 * t1 * t2;
    let q_val = big_q.evaluate(&w.t_statistic());
    let binom = BigRational::from_integer(BigInt::from(binomial(n, m)));
    let turn = pow_signed(t2, m as i64 - n as i64) * pow_signed(t1, -(m as i64));
    let prefactor = if n % 3 == 2 {
        (t0 * t1 + t0 * t2 + t1 * t2) * num_traits::pow(e3, (2 * n * n + 4 * n - 1) / 3)
    } else {
        t0 * num_traits::pow(e3, (2 * n * n + 4 * n) / 3)
    };
    binom * turn * prefactor * q_val
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `Z_{n,m}(t) = sum N^(m)(k) t0^k0 t1^k1 t2^k2` from the table.
fn partition_function(table: &CountTable, m: usize, w: &WeightTriple) -> BigRational {
    let mut acc = BigRational::zero();
    for (key, count) in table.iter().filter(|(k, _)| k.m == m) {
        let mut term = BigRational::from_integer(BigInt::from(count.clone()));
        for (i, t) in w.t.iter().enumerate() {
            term *= num_traits::pow(t.clone(), key.color(i));
        }
        acc += term;
    }
    acc
}

/// Checks the main identity exactly at `trials` seeded weight triples for
/// every `m`, with `Q` reconstructed from `q` (normally the determinant-side
/// polynomial).
pub fn verify_theorem(table: &CountTable, q: &QPolynomial, trials: usize, seed: u64) -> Result<Report> {
    let n = table.n().get();
    if q.n != n {
        return Err(Error::Consistency(format!("q is for n = {}, table for n = {n}", q.n)));
    }
    let mut rec = Recorder::new("theorem", n);
    let big_q = match theorem_polynomial(q) {
        Ok(p) => p,
        Err(Error::Consistency(msg)) => {
            rec.fail(msg);
            return Ok(rec.finish());
        }
        Err(e) => return Err(e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let w = WeightTriple::random(&mut rng);
        for m in 0..=n {
            let lhs = partition_function(table, m, &w);
            let rhs = theorem_rhs(n, m, &w, &big_q);
            rec.expect(lhs == rhs, || format!("m = {m}, t = {w}: lhs {lhs} != rhs {rhs}"));
        }
    }
    // Q(27) at t0 = t1 = t2 = 1 recovers the per-m totals.
    let ones = WeightTriple::new(BigRational::one(), BigRational::one(), BigRational::one())?;
    for m in 0..=n {
        let lhs = partition_function(table, m, &ones);
        rec.expect(lhs == theorem_rhs(n, m, &ones, &big_q), || format!("m = {m}, unit weights"));
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::counting::{brute_force_table, TableConfig};
    use crate::oracle::q_poly;
    use crate::LatticeSize;

    fn table(n: usize) -> CountTable {
        brute_force_table(LatticeSize::new(n).unwrap(), &TableConfig::default()).unwrap()
    }

    #[test]
    fn n1_by_hand() {
        let big_q = theorem_polynomial(&q_poly(1).unwrap()).unwrap();
        assert_eq!(big_q, Poly::one());
        let w = WeightTriple::new(rat(2, 3), rat(-5, 7), int(4)).unwrap();
        let [t0, t1, t2] = &w.t;
        let expect = t0 * t0 * t0 * t1 * t1 * t2;
        assert_eq!(theorem_rhs(1, 0, &w, &big_q), expect);
        assert_eq!(partition_function(&table(1), 0, &w), expect);
    }

    #[test]
    fn n2_branch_has_constant_q() {
        assert_eq!(theorem_polynomial(&q_poly(2).unwrap()).unwrap(), Poly::one());
    }

    #[test]
    fn small_sizes_pass() {
        for n in 1..=3 {
            let r = verify_theorem(&table(n), &q_poly(n).unwrap(), 10, 42).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.checked, 11 * (n as u64 + 1));
        }
    }

    #[test]
    fn wrong_q_is_caught() {
        let q = q_poly(3).unwrap();
        let bad = QPolynomial { n: 3, poly: &q.poly + &Poly::from_ints(&[0, 0, 1, 0, -1]) };
        let r = verify_theorem(&table(3), &bad, 3, 7).unwrap();
        assert!(!r.passed());
    }
}
