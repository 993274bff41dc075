use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_rational, BranchConstants, Recorder, Report};
use crate::algebra::int;
use crate::counting::{binomial, states_with_positive_turns, CountTable, TableConfig};
use crate::error::{Error, Result};
use crate::model::{classify_vertices, for_each_grid, Coloring};
use crate::oracle::QPolynomial;
use crate::LatticeSize;

/// Count at a possibly out-of-range key; negative entries count zero states.
fn count_at(table: &CountTable, m: usize, k: [i64; 3]) -> BigUint {
    if k.iter().any(|&v| v < 0) {
        return BigUint::zero();
    }
    table.count(m, k[0] as usize, k[1] as usize, k[2] as usize)
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Exact checks of the turn shift, the colour symmetry, the extremal colour
/// counts and the per-`m` totals.
pub fn verify_corollaries(table: &CountTable) -> Report {
    let n = table.n().get();
    let ni = n as i64;
    let BranchConstants { a, c, d, .. } = BranchConstants::new(n);
    let mut rec = Recorder::new("corollaries", n);

    // Turn shift: N^(m)(k0, k1, k2) = C(n, m) N^(0)(k0, k1 + m, k2 - m).
    for m in 1..=n {
        let mi = m as i64;
        let factor = binomial(n, m);
        for (key, count) in table.iter() {
            let k = [key.k0 as i64, key.k1 as i64, key.k2 as i64];
            if key.m == m {
                let base = count_at(table, 0, [k[0], k[1] + mi, k[2] - mi]);
                rec.expect(*count == &factor * base, || format!("shift m = {m} at {key:?}"));
            } else if key.m == 0 {
                let shifted = count_at(table, m, [k[0], k[1] - mi, k[2] + mi]);
                rec.expect(shifted == &factor * count, || format!("shift m = {m} from {key:?}"));
            }
        }
    }

    // Colour symmetry of f(k) = N^(m)(k0 + d, k1 - m, k2 + m - n).
    let shift = |m: i64| [d as i64, -m, m - ni];
    for (key, count) in table.iter() {
        let mi = key.m as i64;
        let s = shift(mi);
        let args = [key.k0 as i64 - s[0], key.k1 as i64 - s[1], key.k2 as i64 - s[2]];
        for p in PERMUTATIONS {
            let perm = [args[p[0]] + s[0], args[p[1]] + s[1], args[p[2]] + s[2]];
            let v = count_at(table, key.m, perm);
            rec.expect(v == *count, || {
                let q = [args[p[0]], args[p[1]], args[p[2]]];
                format!("symmetry m = {}: f{args:?} = {count} but f{q:?} = {v}", key.m)
            });
        }
    }

    // Extremal colour counts.
    let top = BigUint::from(2u32).pow((n * (n - 1) / 2) as u32);
    for m in 0..=n {
        let mi = m as i64;
        let lows = [
            ((n * n + 5 * n + a) as i64, 3, 0),
            ((n * n + 5 * n + c) as i64, 3, -mi),
            ((n * n + 2 * n + c) as i64, 3, mi),
        ];
        let highs = [
            ((5 * n * n + 7 * n + 2 * a) as i64, 6, 0),
            ((5 * n * n + 7 * n + 2 * c) as i64, 6, -mi),
            ((5 * n * n + n + 2 * c) as i64, 6, mi),
        ];
        for color in 0..3 {
            let marginal = table.marginal(color, m);
            let (Some((&lo, lo_count)), Some((&hi, hi_count))) =
                (marginal.iter().next(), marginal.iter().next_back())
            else {
                rec.fail(format!("color {color}, m = {m}: empty marginal"));
                continue;
            };
            for ((num, den, off), seen, seen_count, expect, what) in [
                (lows[color], lo, lo_count, binomial(n, m), "minimum"),
                (highs[color], hi, hi_count, binomial(n, m) * &top, "maximum"),
            ] {
                let bound = (num % den == 0).then(|| num / den + off);
                rec.expect(bound == Some(seen as i64), || {
                    format!("color {color}, m = {m}: {what} is {seen}, formula gives {num}/{den}{off:+}")
                });
                rec.expect(*seen_count == expect, || {
                    format!("color {color}, m = {m}: {seen_count} states at the {what}, expected {expect}")
                });
            }
        }
    }

    // Per-m totals.
    for m in 0..=n {
        let (got, expect) = (table.total_for(m), states_with_positive_turns(n, m));
        rec.expect(got == expect, || format!("m = {m}: total {got}, expected {expect}"));
    }
    rec.finish()
}

/// Streams every state and checks the two vertex census relations
/// `#b+ = #b- + C(n+1, 2)` and `#c+ + 2 #k- = #c- + n`.
pub fn verify_lemma_counts(n: LatticeSize, config: &TableConfig) -> Result<Report> {
    let nn = n.get();
    if nn > config.brute_force_cap {
        return Err(Error::CapExceeded {
            what: "state enumeration",
            n: nn,
            cap: config.brute_force_cap,
            hint: "the census check visits every state",
        });
    }
    let mut rec = Recorder::new("lemma", nn);
    let pairs = nn * (nn + 1) / 2;
    for_each_grid(n, |cells| {
        let col = Coloring::from_cells_unchecked(n, cells.to_vec());
        let v = classify_vertices(&col);
        let ok = v.b_plus == v.b_minus + pairs && v.c_plus + 2 * v.k_minus == v.c_minus + nn;
        rec.expect(ok, || col.encode().replace('\n', "/"));
    });
    Ok(rec.finish())
}

/// `q(z + 1)` and `(z + 1)^(n(n-1)) q(1/(z + 1))` have positive integer
/// coefficients in every degree.
pub fn verify_positivity(q: &QPolynomial) -> Report {
    let mut rec = Recorder::new("positivity", q.n);
    let d = q.degree();
    let shifted = q.poly.shift();
    let flipped = q.poly.reverse(d).expect("degree is exactly d").shift();
    for (name, p) in [("q(z+1)", &shifted), ("(z+1)^d q(1/(z+1))", &flipped)] {
        rec.expect(p.degree() == Some(d) && p.has_positive_integer_coeffs(), || {
            format!("{name} = {p}")
        });
    }
    rec.finish()
}

/// Evenness and `q(z) = ((1+3z)/2)^(n(n-1)) q((1-z)/(1+3z))` at five seeded
/// rational points.
pub fn verify_symmetries(q: &QPolynomial, seed: u64) -> Report {
    let mut rec = Recorder::new("symmetries", q.n);
    rec.expect(q.poly.is_even(), || format!("q = {} is not even", q.poly));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0;
    while tried < 5 {
        let z = random_rational(&mut rng);
        let s = &z * int(3) + int(1);
        if s.is_zero() {
            continue;
        }
        tried += 1;
        let lhs = q.poly.evaluate(&z);
        let image = (int(1) - &z) / &s;
        let rhs = num_traits::pow(s / int(2), q.degree()) * q.poly.evaluate(&image);
        rec.expect(lhs == rhs, || format!("z = {z}: {lhs} != {rhs}"));
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_table;
    use crate::oracle::q_poly;
    use crate::StateStats;

    fn size(n: usize) -> LatticeSize {
        LatticeSize::new(n).unwrap()
    }

    fn table(n: usize) -> CountTable {
        brute_force_table(size(n), &TableConfig::default()).unwrap()
    }

    #[test]
    fn corollaries_hold_for_small_tables() {
        for n in 1..=4 {
            let r = verify_corollaries(&table(n));
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn n2_symmetry_values() {
        // d = 0 for n = 2, so f(k) = N^(0)(k0, k1, k2 - 2).
        let t = table(2);
        for k in [[5, 6, 6], [6, 5, 6], [6, 6, 5]] {
            assert_eq!(t.count(0, k[0], k[1], k[2] - 2), 1u32.into());
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let mut t = table(3);
        t.add(StateStats::new(1, 9, 6, 6), 1u32.into());
        let r = verify_corollaries(&t);
        assert!(!r.passed());
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn lemma_census() {
        for (n, states) in [(1, 2), (2, 12), (3, 208)] {
            let r = verify_lemma_counts(size(n), &TableConfig::default()).unwrap();
            assert!(r.passed());
            assert_eq!(r.checked, states);
        }
        let cfg = TableConfig { brute_force_cap: 2, ..Default::default() };
        assert!(verify_lemma_counts(size(3), &cfg).is_err());
    }

    #[test]
    fn q_properties() {
        for n in 1..=4 {
            let q = q_poly(n).unwrap();
            assert!(verify_positivity(&q).passed());
            assert!(verify_symmetries(&q, 42).passed());
        }
        let wrong = QPolynomial { n: 2, poly: crate::Poly::from_ints(&[1, 0, 2]) };
        assert!(!verify_symmetries(&wrong, 1).passed());
        assert!(verify_positivity(&wrong).passed());
        let negative = QPolynomial { n: 2, poly: crate::Poly::from_ints(&[1, 0, -2]) };
        assert!(!verify_positivity(&negative).passed());
    }
}
