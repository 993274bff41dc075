use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_rational, BranchConstants, Recorder, Report};
use crate::algebra::Poly;
use crate::counting::CountTable;
use crate::error::{Error, Result};
use crate::oracle::{g_eval, q_poly, t_equal_confluent, t_equal_line_oracle, QPolynomial};

/// Expands `q_{n-1}(z) = sum_k N^(0)_0(k) (z(z+1))^(k - L) (z-1)^(U - 2k)` with
/// `L = (n^2+5n+a)/3` and `U = (5n^2+7n+2a)/3`.
pub fn q_from_counts(table: &CountTable) -> Result<QPolynomial> {
    let n = table.n().get();
    let BranchConstants { a, .. } = BranchConstants::new(n);
    let lower = (n * n + 5 * n + a) as i64;
    let upper = (5 * n * n + 7 * n + 2 * a) as i64;
    if lower % 3 != 0 || upper % 3 != 0 {
        return Err(Error::Consistency(format!("non-integral exponent bounds for n = {n}")));
    }
    let (lower, upper) = (lower / 3, upper / 3);
    let zz1 = Poly::from_ints(&[0, 1, 1]);
    let zm1 = Poly::from_ints(&[-1, 1]);
    let mut q = Poly::zero();
    for (k0, count) in table.marginal(0, 0) {
        let k0 = k0 as i64;
        let (e1, e2) = (k0 - lower, upper - 2 * k0);
        if e1 < 0 || e2 < 0 {
            return Err(Error::TableCorruption(format!(
                "k0 = {k0} gives a negative exponent for n = {n}"
            )));
        }
        let term = &zz1.pow(e1 as u32) * &zm1.pow(e2 as u32);
        q = &q + &term.scale(&BigRational::from_integer(BigInt::from(count)));
    }
    QPolynomial::new(n, q)
}

/// The combinatorial and determinant routes to `q_{n-1}` agree exactly.
pub fn verify_q_cross(table: &CountTable) -> Result<Report> {
    let n = table.n().get();
    let mut rec = Recorder::new("qcross", n);
    let from_counts = q_from_counts(table)?;
    let from_det = q_poly(n)?;
    rec.expect(from_counts == from_det, || {
        format!("counts give {}, determinant gives {}", from_counts.poly, from_det.poly)
    });
    Ok(rec.finish())
}

/// The confluent evaluation of `T(c, ..., c)` against the line interpolation
/// at `points` seeded admissible `(c, psi)`.
pub fn verify_confluent(n: usize, points: usize, seed: u64) -> Result<Report> {
    let mut rec = Recorder::new("confluent", n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < points {
        let (c, psi) = (random_rational(&mut rng), random_rational(&mut rng));
        if g_eval(&c, &c, &psi).is_zero() {
            continue;
        }
        done += 1;
        let a = t_equal_confluent(n, &c, &psi)?;
        let b = t_equal_line_oracle(n, &c, &psi)?;
        rec.expect(a == b, || format!("c = {c}, psi = {psi}: confluent {a}, line {b}"));
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{brute_force_table, TableConfig};
    use crate::oracle::q_poly;
    use crate::LatticeSize;

    fn table(n: usize) -> CountTable {
        brute_force_table(LatticeSize::new(n).unwrap(), &TableConfig::default()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(q_from_counts(&table(1)).unwrap().poly, Poly::one());
        assert_eq!(q_from_counts(&table(2)).unwrap().poly, Poly::from_ints(&[1, 0, 3]));
        assert_eq!(q_from_counts(&table(3)).unwrap(), q_poly(3).unwrap());
    }

    #[test]
    fn cross_checks() {
        for n in 1..=3 {
            assert!(verify_q_cross(&table(n)).unwrap().passed());
        }
        for n in 1..=3 {
            let r = verify_confluent(n, 5, 42).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.checked, 5);
        }
    }

    #[test]
    fn corrupted_table() {
        let mut t = table(2);
        t.add(crate::StateStats::new(0, 2, 6, 7), 1u32.into());
        assert!(matches!(q_from_counts(&t), Err(Error::TableCorruption(_))));
    }
}
