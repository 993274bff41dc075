use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::partition::{turn_weight, vertex_weight};
use super::{omega, relative, theta, z_enumerate, EllipticParams, NumericReport};
use crate::counting::CountTable;
use crate::error::{Error, Result};
use crate::model::{TurnKind, VertexKind};

const WEIGHT_THRESHOLD: f64 = 1e-10;
const REDUCTION_THRESHOLD: f64 = 1e-8;

fn cx(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Face-height offsets `(b - a, c - a, d - a)` of each vertex type.
fn offsets(kind: VertexKind) -> [i32; 3] {
    match kind {
        VertexKind::APlus => [-1, -1, -2],
        VertexKind::AMinus => [1, 1, 2],
        VertexKind::BPlus => [1, -1, 0],
        VertexKind::BMinus => [-1, 1, 0],
        VertexKind::CPlus => [-1, -1, 0],
        VertexKind::CMinus => [1, 1, 0],
    }
}

const KINDS: [VertexKind; 6] = [
    VertexKind::APlus,
    VertexKind::AMinus,
    VertexKind::BPlus,
    VertexKind::BMinus,
    VertexKind::CPlus,
    VertexKind::CMinus,
];

/// Compares the general local weights at `lambda = -1/2`, `mu = 0`,
/// `eta = -2/3` with their closed forms for heights `-2..=2`, and the
/// normalised weights with the single-theta expressions in the face heights.
pub fn verify_prop32_weights(rho: Complex64, zeta: Complex64, p: Complex64) -> Result<Vec<NumericReport>> {
    let params = EllipticParams::three_color(1, rho, zeta, p)?;
    let th = |x: Complex64| theta(x, p);
    let q = |x: f64| params.q_pow(cx(x));
    let l = cx(-0.5);
    let a_factor = q(0.25) * th(q(0.5))? / th(q(1.0))?;

    let mut worst = std::collections::BTreeMap::<&str, f64>::new();
    let mut notes = Vec::new();
    let mut record = |name: &'static str, r: f64| {
        let e = worst.entry(name).or_insert(0.0);
        *e = e.max(r);
    };

    for a in -2..=2 {
        let rq = |s: f64| rho * q(a as f64 + s);
        let den = th(rq(0.0))?;
        if den.norm() < 1e-10 {
            notes.push(format!("height {a} skipped: theta(rho q^a) vanishes"));
            continue;
        }
        for kind in KINDS {
            let general = match vertex_weight(&params, kind, l, a) {
                Ok(w) => w,
                Err(Error::SingularParameter(m)) => {
                    notes.push(format!("height {a}, {kind:?} skipped: {m}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let (name, closed, tilde_factor) = match kind {
                VertexKind::APlus | VertexKind::AMinus => ("a", a_factor, a_factor),
                VertexKind::BPlus => (
                    "b+",
                    -q(0.75) * th(q(0.5))? * th(rq(-1.0))? / (den * th(q(1.0))?),
                    -q(0.5) * a_factor,
                ),
                VertexKind::BMinus => (
                    "b-",
                    -q(-0.25) * th(q(0.5))? * th(rq(1.0))? / (den * th(q(1.0))?),
                    -q(-0.5) * a_factor,
                ),
                VertexKind::CPlus => ("c+", q(0.25) * th(rq(-0.5))? / den, q(0.25)),
                VertexKind::CMinus => ("c-", q(-0.25) * th(rq(0.5))? / den, q(-0.25)),
            };
            record(name, relative(general, closed));
            let [ob, oc, od] = offsets(kind);
            let (hb, hc, hd) = (a + ob, a + oc, a + od);
            let expo = (3 * a - hb + 3 * hc - hd) as f64 / 4.0;
            let single = th(rho * q(expo))? / den;
            record("normalised vertex", relative(general / tilde_factor, single));
        }
    }
    for (kind, name, base, inside) in [
        (TurnKind::Positive, "k+", rho * zeta, -1),
        (TurnKind::Negative, "k-", zeta, 1),
    ] {
        let general = turn_weight(&params, kind, l)?;
        let closed = q(-0.5) * th(base * q(0.5))? / th(base * q(-0.5))?;
        record(name, relative(general, closed));
        let r = rho.powf((1 - inside) as f64 / 2.0) * zeta;
        let single = th(r * q(0.5))? / th(r * q(-0.5))?;
        record("normalised turn", relative(general / q(-0.5), single));
    }

    Ok(worst
        .into_iter()
        .map(|(name, r)| {
            let mut rep = NumericReport::new(&format!("weights {name}"), r, WEIGHT_THRESHOLD, p, None);
            rep.notes = notes.clone();
            rep
        })
        .collect())
}

/// The three-color reduction: the elliptic partition function at the
/// three-color point against the exact count table with face weights
/// `t_i = 1/theta(rho omega^i)^3`.
pub fn verify_prop33(table: &CountTable, rho: Complex64, zeta: Complex64, p: Complex64) -> Result<NumericReport> {
    let n = table.n().get();
    let params = EllipticParams::three_color(n, rho, zeta, p)?;
    let lhs = z_enumerate(&params)?;
    let rhs = reduction_rhs(table, rho, zeta, p)?;
    Ok(NumericReport::new(
        &format!("three-color reduction n={n}"),
        relative(lhs, rhs),
        REDUCTION_THRESHOLD,
        p,
        None,
    ))
}

pub(crate) fn reduction_rhs(table: &CountTable, rho: Complex64, zeta: Complex64, p: Complex64) -> Result<Complex64> {
    let n = table.n().get();
    let w = omega();
    let wi = w.inv();
    let th = |x: Complex64| theta(x, p);
    let t_rho = [th(rho)?, th(rho * w)?, th(rho * w * w)?];
    let weights: Vec<Complex64> = t_rho.iter().map(|v| v.powi(3).inv()).collect();
    let theta3 = theta(rho.powi(3), p.powi(3))?;
    let r_pos = th(rho * zeta * wi)? / th(rho * zeta * w)?;
    let r_neg = th(zeta * wi)? / th(zeta * w)?;
    let b = match n % 3 {
        0 => cx(1.0),
        1 => th(rho * wi)? / t_rho[0],
        _ => th(rho * w)? * th(rho * wi)? / (t_rho[0] * t_rho[0]),
    };
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let (ni, n2) = (n as i32, (n * n) as i32);
    let mut total = cx(0.0);
    for m in 0..=n {
        let mi = m as i32;
        let mut z3c = cx(0.0);
        for (key, count) in table.iter().filter(|(k, _)| k.m == m) {
            let c = count.to_f64().expect("counts fit in f64");
            z3c += weights[0].powi(key.k0 as i32)
                * weights[1].powi(key.k1 as i32)
                * weights[2].powi(key.k2 as i32)
                * c;
        }
        total += r_pos.powi(mi)
            * r_neg.powi(ni - mi)
            * w.powi(n2 + ni - mi)
            * theta3.powi(2 * n2 + 2 * ni)
            * t_rho[0].powi(ni + 3)
            * th(rho * wi)?.powi(2 * mi)
            * th(rho * w)?.powi(2 * (ni - mi))
            * b
            * z3c;
    }
    Ok(total * sign)
}
