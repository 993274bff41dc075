use num_complex::Complex64;

use super::{nonzero, EllipticParams};
use crate::error::{Error, Result};
use crate::model::{lattice_sites, Colorings, TurnKind, VertexKind, VertexSite};
use crate::LatticeSize;

/// Largest `n` for which the weighted enumeration runs.
const ENUMERATION_CAP: usize = 4;

fn cx(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Local weight of a vertex with argument `l` (`lambda_i -+ mu_j`).
pub(crate) fn vertex_weight(params: &EllipticParams, kind: VertexKind, l: Complex64, a: i32) -> Result<Complex64> {
    let one = cx(1.0);
    let z = params.rho * params.q_pow(cx(a as f64));
    let den_z = || nonzero(params.shifted(z, cx(0.0))?, || format!("theta(rho q^{a})"));
    let den_one = || nonzero(params.bracket(one)?, || "[1]".to_string());
    Ok(match kind {
        VertexKind::APlus | VertexKind::AMinus => params.bracket(l + one)? / den_one()?,
        VertexKind::BPlus => params.bracket(l)? * params.shifted(z, -one)? / (den_z()? * den_one()?),
        VertexKind::BMinus => params.bracket(l)? * params.shifted(z, one)? / (den_z()? * den_one()?),
        VertexKind::CPlus => params.shifted(z, l)? / den_z()?,
        VertexKind::CMinus => params.shifted(z, -l)? / den_z()?,
    })
}

/// Local weight of a turn on the double row with parameter `l`; the face
/// outside every turn has height `rho`.
pub(crate) fn turn_weight(params: &EllipticParams, kind: TurnKind, l: Complex64) -> Result<Complex64> {
    let base = match kind {
        TurnKind::Positive => params.rho * params.zeta,
        TurnKind::Negative => params.zeta,
    };
    let den = nonzero(params.shifted(base, l)?, || format!("turn denominator for {kind:?}"))?;
    Ok(params.shifted(base, -l)? / den)
}

pub(crate) fn site_argument(params: &EllipticParams, v: &VertexSite) -> Complex64 {
    let (l, m) = (params.lambda[v.double_row - 1], params.mu[v.column - 1]);
    if v.upper {
        l - m
    } else {
        l + m
    }
}

/// The partition function as a sum over all states of the product of local
/// weights. States are visited in enumeration order and summed sequentially,
/// so the result is bit-for-bit reproducible.
pub fn z_enumerate(params: &EllipticParams) -> Result<Complex64> {
    let n = params.n();
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "weighted enumeration",
            n,
            cap: ENUMERATION_CAP,
            hint: "use the determinant formula for larger lattices",
        });
    }
    let mut total = cx(0.0);
    for col in Colorings::new(LatticeSize::new(n)?) {
        let (vertices, turns) = lattice_sites(&col);
        let mut w = cx(1.0);
        for v in &vertices {
            w *= vertex_weight(params, v.kind, site_argument(params, v), v.height())?;
        }
        for t in &turns {
            w *= turn_weight(params, t.kind, params.lambda[t.double_row - 1])?;
        }
        total += w;
    }
    Ok(total)
}

/// Determinant by LU decomposition with partial pivoting.
pub fn complex_determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = cx(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .expect("nonempty range");
        if m[pivot][col].norm() == 0.0 {
            return cx(0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / p;
            for (x, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
        }
    }
    det
}

/// The closed determinant formula for the partition function.
pub fn z_filali(params: &EllipticParams) -> Result<Complex64> {
    let n = params.n();
    let (lam, mu) = (&params.lambda, &params.mu);
    let one = cx(1.0);
    let b = |x: Complex64| params.bracket(x);
    let nz = |v: Complex64, what: &str| nonzero(v, || what.to_string());
    let rz = params.rho * params.zeta;

    let mut z = nz(b(one)?, "[1]")?.powi(n as i32 - 2 * (n * n) as i32);
    for i in 1..=n {
        let (l, m) = (lam[i - 1], mu[i - 1]);
        let num = b(l * 2.0)?
            * params.shifted(params.zeta, -m)?
            * params.shifted(rz, m)?
            * params.shifted(params.rho, cx(2.0 * i as f64 - n as f64 - 2.0))?;
        let den = params.shifted(params.zeta, l)?
            * params.shifted(rz, l)?
            * params.shifted(params.rho, cx((n - i) as f64))?;
        z *= num / nz(den, &format!("turn prefactor denominator at i = {i}"))?;
    }
    let mut kernel = vec![vec![cx(0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (l, m) = (lam[i], mu[j]);
            let k = b(l + m + one)? * b(l - m + one)? * b(l + m)? * b(l - m)?;
            z *= k;
            kernel[i][j] = nz(k, &format!("K denominator at ({}, {})", i + 1, j + 1))?.inv();
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = b(lam[i] + lam[j] + one)? * b(lam[i] - lam[j])? * b(mu[j] + mu[i])? * b(mu[j] - mu[i])?;
            z /= nz(d, &format!("pair denominator at ({}, {})", i + 1, j + 1))?;
        }
    }
    Ok(z * complex_determinant(kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::relative;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_small() {
        let m = vec![
            vec![cx(2.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), cx(3.0)],
        ];
        assert!((complex_determinant(m) - cx(5.0)).norm() < 1e-14);
        assert_eq!(complex_determinant(vec![]), cx(1.0));
    }

    #[test]
    fn enumeration_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 1..=3 {
            for _ in 0..3 {
                let params = EllipticParams::random(n, &mut rng);
                let (a, b) = (z_enumerate(&params).unwrap(), z_filali(&params).unwrap());
                assert!(relative(a, b) < 1e-9, "n = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn translation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = EllipticParams::random(2, &mut rng);
        let base = z_enumerate(&params).unwrap();
        let mut moved = params.clone();
        moved.mu[1] += params.eta.inv();
        assert!(relative(z_enumerate(&moved).unwrap(), base) < 1e-9);
        let mut moved = params.clone();
        moved.lambda[0] += params.eta.inv();
        assert!(relative(z_filali(&moved).unwrap(), z_filali(&params).unwrap()) < 1e-9);
    }

    #[test]
    fn enumeration_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = EllipticParams::random(5, &mut rng);
        assert!(matches!(z_enumerate(&params), Err(Error::CapExceeded { .. })));
    }
}
