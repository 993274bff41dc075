use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact determinant by Gaussian elimination.
/// Panics if the matrix is not square.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let (top, rest) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for k in col..n {
                let d = &f * &prow[k];
                row[k] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant(vec![]), int(1));
        assert_eq!(determinant(ints(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(ints(&[&[2, 1, 3], &[0, 4, 5], &[1, 0, 6]])), int(41));
        assert_eq!(determinant(ints(&[&[1, 2], &[2, 4]])), int(0));
        let h: Vec<Vec<_>> = (0..3)
            .map(|i| (0..3).map(|j| rat(1, i + j + 1)).collect())
            .collect();
        assert_eq!(determinant(h), rat(1, 2160));
    }

    #[test]
    fn vandermonde() {
        let xs = [int(2), rat(-1, 3), int(5), rat(7, 2)];
        let m = xs
            .iter()
            .map(|x| (0..4).map(|k| num_traits::pow(x.clone(), k)).collect())
            .collect();
        let mut expect = int(1);
        for i in 0..4 {
            for j in i + 1..4 {
                expect *= &xs[j] - &xs[i];
            }
        }
        assert_eq!(determinant(m), expect);
    }
}
