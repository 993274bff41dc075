use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{e, omega, random_point, relative, theta, NumericReport};
use crate::error::Result;
use crate::oracle::g_generic;

const THRESHOLD: f64 = 1e-10;
const TRIALS: usize = 10;

fn cx(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Theta values shared by the identities at one nome.
struct Nome {
    p: Complex64,
    s: Complex64,
    w: Complex64,
}

impl Nome {
    fn th(&self, x: Complex64) -> Result<Complex64> {
        theta(x, self.p)
    }

    /// `theta(a e(z)) theta(a e(-z))`.
    fn th_pm(&self, a: Complex64, z: Complex64) -> Result<Complex64> {
        Ok(self.th(a * e(z))? * self.th(a * e(-z))?)
    }

    fn psi(&self) -> Result<Complex64> {
        let (s, w) = (self.s, self.w);
        Ok(w * w * self.th(cx(-1.0))? * self.th(-s * w)? / (self.th(-s)? * self.th(-w)?))
    }

    /// `x(z)`.
    fn x(&self, z: Complex64) -> Result<Complex64> {
        let (s, w) = (self.s, self.w);
        Ok(self.th(-s * w)?.powi(2) * self.th_pm(w, z)? / (self.th(-w)?.powi(2) * self.th_pm(s * w, z)?))
    }

    /// The ratio whose powers appear in the closing identities.
    fn r(&self) -> Result<Complex64> {
        let (s, w) = (self.s, self.w);
        Ok(self.th(w)?.powi(2) * self.th(cx(-1.0))? * self.th(s)?.powi(2) * self.th(-s * w)?.powi(4)
            / (self.th(-w)?.powi(2) * self.th(-s)? * self.th(s * w)?.powi(3)))
    }
}

/// Additive test point: real part in `[0, 1)`, imaginary part in `[-0.1, 0.1]`.
fn additive_point(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(0.0..1.0), rng.gen_range(-0.1..=0.1))
}

/// Evaluates both sides of each identity of the theta layer at seeded
/// points and reports the largest relative residual per identity.
pub fn theta_identity_suite(p: Complex64, seed: u64) -> Result<Vec<NumericReport>> {
    let nome = Nome { p, s: p.sqrt(), w: omega() };
    let (s, w) = (nome.s, nome.w);
    let th = |x: Complex64| nome.th(x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |name: &str, r: f64| out.push(NumericReport::new(name, r, THRESHOLD, p, Some(seed)));

    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let x = random_point(&mut rng);
        let rhs = -th(x)? / x;
        worst = worst.max(relative(th(p * x)?, rhs)).max(relative(th(x.inv())?, rhs));
    }
    push("quasi-periodicity", worst);

    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let [x1, x2, x3, x4] = [0; 4].map(|_| random_point(&mut rng));
        let t1 = th(x1 * x3)? * th(x1 / x3)? * th(x2 * x4)? * th(x2 / x4)?;
        let t2 = th(x1 * x4)? * th(x1 / x4)? * th(x2 * x3)? * th(x2 / x3)?;
        let rhs = x2 / x3 * th(x1 * x2)? * th(x1 / x2)? * th(x3 * x4)? * th(x3 / x4)?;
        let scale = t1.norm().max(t2.norm()).max(rhs.norm());
        worst = worst.max((t1 - t2 - rhs).norm() / scale);
    }
    push("addition rule", worst);

    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let x = random_point(&mut rng);
        let a = rng.gen_range(0..3);
        let lhs = th(x * w.powi(a))? * th(x * w.powi(a + 1))? * th(x * w.powi(a + 2))?;
        worst = worst.max(relative(lhs, theta(x.powi(3), p.powi(3))?));
    }
    push("three-product", worst);

    push("omega symmetry at p^(1/2)", relative(th(s * w)?, th(s * w * w)?));
    push("product at -1", relative(th(cx(-1.0))? * th(s)? * th(-s)?, cx(2.0)));
    push("product at -omega", relative(th(-w)? * th(s * w)? * th(-s * w)?, -w * w));

    let psi = nome.psi()?;
    let one = cx(1.0);
    push(
        "2psi+1",
        relative(
            psi * 2.0 + one,
            th(-s * w)?.powi(2) * th(w)?.powi(2) / (th(-w)?.powi(2) * th(s * w)?.powi(2)),
        ),
    );
    push("psi+1", relative(psi + one, -th(s)? * th(-s * w)? / (th(-s)? * th(s * w)?)));
    push(
        "psi-1",
        relative(
            psi - one,
            th(s)? * th(s * w)? * th(w)?.powi(2) / (th(-s)? * th(-s * w)? * th(-w)?.powi(2)),
        ),
    );
    push("x(0) = 2psi+1", relative(nome.x(cx(0.0))?, psi * 2.0 + one));
    push("x(1/2) = 1", relative(nome.x(cx(0.5))?, one));

    let prefactor = th(-s * w)?.powi(2) * th(s * w)? * th(s)? * w / th(-w)?.powi(2);
    let c_tilde = w * w * th(cx(-1.0))? * th(s)?.powi(3) * th(s * w)?.powi(2) * th(-s * w)?.powi(6)
        / (th(-w)?.powi(4) * th(-s)?);
    let (mut worst_diff, mut worst_lemma) = (0.0f64, 0.0f64);
    for _ in 0..TRIALS {
        let (z, v) = (additive_point(&mut rng), additive_point(&mut rng));
        let (xz, xv) = (nome.x(z)?, nome.x(v)?);
        let rhs = prefactor * e(-v) * th(e(v + z))? * th(e(v - z))?
            / (nome.th_pm(s * w, z)? * nome.th_pm(s * w, v)?);
        worst_diff = worst_diff.max(relative(xz - xv, rhs));

        let lhs = th(e(v + z))? * th(e(v - z))?
            / (theta(e(3.0 * (v + z)), p.powi(3))? * theta(e(3.0 * (v - z)), p.powi(3))?);
        let rhs = c_tilde * e(-2.0 * v)
            / (nome.th_pm(s * w, v)?.powi(2) * nome.th_pm(s * w, z)?.powi(2))
            / g_generic(xz, xv, psi);
        worst_lemma = worst_lemma.max(relative(lhs, rhs));
    }
    push("x(z) - x(w)", worst_diff);
    push("kernel factorisation", worst_lemma);

    let g11 = g_generic(one, one, psi);
    push(
        "kernel constant",
        relative(c_tilde, th(-s * w)?.powi(8) / (w.powi(4) * th(w)?.powi(4)) * g11),
    );
    push(
        "G(1,1) = 2(psi-1)^2",
        relative(
            g11,
            th(cx(-1.0))? * th(s)?.powi(3) * th(s * w)?.powi(2) * th(w)?.powi(4)
                / (th(-s)? * th(-s * w)?.powi(2) * th(-w)?.powi(4)),
        )
        .max(relative(g11, (psi - one).powi(2) * 2.0)),
    );

    let r = nome.r()?;
    push(
        "cube ratio",
        relative(th(-w)?.powi(3) / th(cx(-1.0))?.powi(3), (psi + one) / (psi * psi * 2.0)),
    );
    push(
        "sixth power",
        relative(r.powi(6), psi * psi * (psi + one).powi(8) * (psi * 2.0 + one).powi(6) * 16.0),
    );
    push(
        "square",
        relative(
            w.powi(4) * (th(cx(-1.0))? / th(-w)?).powi(2) * r * r,
            (psi * (psi + one) * (psi * 2.0 + one) * 2.0).powi(2),
        ),
    );
    Ok(out)
}
