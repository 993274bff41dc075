//! Acceptance criteria, one pass/fail line each. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tricolor_core::algebra::{int, rat};
use tricolor_core::counting::{
    best_table, brute_force_table, states_with_positive_turns, transfer_table, vsasm_count, TableConfig,
};
use tricolor_core::elliptic::{
    random_point, theta_identity_suite, verify_partition_function, verify_prop32_weights, verify_prop33,
};
use tricolor_core::model::{count_states, Colorings};
use tricolor_core::oracle::{q_poly, t_equal_confluent, t_equal_line_oracle};
use tricolor_core::verify::{
    q_from_counts, verify_confluent, verify_corollaries, verify_lemma_counts, verify_positivity, verify_symmetries,
    verify_theorem, Report,
};
use tricolor_core::{BigInt, BigRational, BigUint, LatticeSize};

const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn size(n: usize) -> LatticeSize {
    LatticeSize::new(n).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(r: Report) -> Result<(), String> {
    check(r.passed(), || format!("{} n={}: {:?}", r.check, r.n, r.witnesses))
}

fn err(e: tricolor_core::Error) -> String {
    e.to_string()
}

fn state_counts() -> Outcome {
    let expected_total = [2u64, 12, 208, 10336];
    let expected_zero = [1u64, 3, 26, 646];
    for n in 1..=4 {
        let total = count_states(size(n));
        let zero = Colorings::new(size(n)).filter(|c| c.positive_turns() == 0).count() as u64;
        let formula_total: BigUint = (0..=n).map(|m| states_with_positive_turns(n, m)).sum();
        check(BigUint::from(total) == formula_total, || format!("n={n}: enumerated {total}, formula {formula_total}"))?;
        check(BigUint::from(zero) == vsasm_count(n), || format!("n={n}: m=0 enumerated {zero}"))?;
        check(total == expected_total[n - 1] && zero == expected_zero[n - 1], || format!("n={n}: {total}/{zero}"))?;
    }
    Ok("totals 2, 12, 208, 10336; m=0 subsets 1, 3, 26, 646".into())
}

fn q_cross() -> Outcome {
    let cfg = TableConfig::default();
    for n in 2..=5 {
        let (table, _) = best_table(size(n), &cfg).map_err(err)?;
        let a = q_from_counts(&table).map_err(err)?;
        let b = q_poly(n).map_err(err)?;
        check(a == b, || format!("n={n}: counts {} vs determinant {}", a.poly, b.poly))?;
    }
    Ok("q_from_counts = q_poly for n = 2..5".into())
}

fn q_properties() -> Outcome {
    for n in 2..=5 {
        let q = q_poly(n).map_err(err)?;
        let e = (n * n - n) as u32;
        check(q.poly.integer_coeffs().is_some(), || format!("n={n}: non-integer coefficient"))?;
        check(q.poly.evaluate(&int(0)).is_one(), || format!("n={n}: q(0) != 1"))?;
        check(q.poly.is_even(), || format!("n={n}: not even"))?;
        let at_one = q.poly.evaluate(&int(1));
        check(at_one == BigRational::from_integer(BigInt::from(2).pow(e)), || format!("n={n}: q(1) = {at_one}"))?;
        let third = q.poly.evaluate(&rat(1, 3));
        let a0 = BigRational::from_integer(BigInt::from(vsasm_count(n)));
        let want = a0 * num_traits::pow(rat(2, 3), e as usize);
        check(third == want, || format!("n={n}: q(1/3) = {third}, want {want}"))?;
        report(verify_symmetries(&q, SEED + n as u64))?;
        report(verify_positivity(&q))?;
    }
    Ok("integrality, q(0), evenness, q(1), q(1/3), symmetry, positivity for n = 2..5".into())
}

fn lemma() -> Outcome {
    let cfg = TableConfig::default();
    let mut states = 0;
    for n in 1..=4 {
        let r = verify_lemma_counts(size(n), &cfg).map_err(err)?;
        states += r.checked;
        report(r)?;
    }
    Ok(format!("{states} states checked for n <= 4"))
}

fn corollaries() -> Outcome {
    let cfg = TableConfig::default();
    for n in 1..=4 {
        report(verify_corollaries(&brute_force_table(size(n), &cfg).map_err(err)?))?;
    }
    Ok("shift, permutation symmetry, extremal bounds for n <= 4".into())
}

fn theorem() -> Outcome {
    let cfg = TableConfig::default();
    let mut checked = 0;
    for n in 1..=4 {
        let table = brute_force_table(size(n), &cfg).map_err(err)?;
        let q = q_poly(n).map_err(err)?;
        let r = verify_theorem(&table, &q, 10, SEED + n as u64).map_err(err)?;
        checked += r.checked;
        report(r)?;
    }
    Ok(format!("{checked} exact identities over both branches, n <= 4"))
}

fn transfer() -> Outcome {
    let cfg = TableConfig::default();
    for n in 1..=4 {
        let a = transfer_table(size(n), &cfg).map_err(err)?;
        let b = brute_force_table(size(n), &cfg).map_err(err)?;
        check(a == b, || format!("n={n}: transfer and brute force differ"))?;
    }
    let start = Instant::now();
    let t8 = transfer_table(size(8), &cfg).map_err(err)?;
    let secs = start.elapsed();
    for m in 0..=8 {
        let (got, want) = (t8.total_for(m), states_with_positive_turns(8, m));
        check(got == want, || format!("n=8 m={m}: {got} vs {want}"))?;
    }
    check(secs < Duration::from_secs(300), || format!("n=8 took {secs:?}"))?;
    Ok(format!("n <= 4 identical; n = 8 per-m totals exact in {:.2}s", secs.as_secs_f64()))
}

fn confluent() -> Outcome {
    for n in 2..=3 {
        let r = verify_confluent(n, 5, SEED + n as u64).map_err(err)?;
        check(r.checked == 5, || format!("n={n}: {} points", r.checked))?;
        report(r)?;
    }
    let (c, psi) = (rat(3, 5), rat(1, 4));
    let (a, b) = (
        t_equal_confluent(3, &c, &psi).map_err(err)?,
        t_equal_line_oracle(3, &c, &psi).map_err(err)?,
    );
    check(a == b && !a.is_zero(), || format!("fixed point: {a} vs {b}"))?;
    Ok("5 seeded admissible points each for n = 2, 3".into())
}

fn elliptic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut nome = || Complex64::from_polar(rng.gen_range(0.05..=0.5), rng.gen_range(0.0..std::f64::consts::TAU));
    let mut worst_partition = 0.0f64;
    for n in 1..=3 {
        let r = verify_partition_function(n, 5, SEED + n as u64).map_err(err)?;
        check(r.residual < 1e-9, || format!("n={n}: relative error {:e}", r.residual))?;
        worst_partition = worst_partition.max(r.residual);
    }
    let mut worst_exact = 0.0f64;
    let mut worst_reduction = 0.0f64;
    let mut point_rng = ChaCha8Rng::seed_from_u64(SEED + 100);
    for _ in 0..3 {
        let p = nome();
        let (rho, zeta) = (random_point(&mut point_rng), random_point(&mut point_rng));
        let mut reps = verify_prop32_weights(rho, zeta, p).map_err(err)?;
        reps.extend(theta_identity_suite(p, point_rng.gen()).map_err(err)?);
        for r in reps {
            check(r.residual < 1e-10, || format!("{}: residual {:e}", r.identity, r.residual))?;
            worst_exact = worst_exact.max(r.residual);
        }
        for n in 1..=2 {
            let table = brute_force_table(size(n), &TableConfig::default()).map_err(err)?;
            let r = verify_prop33(&table, rho, zeta, p).map_err(err)?;
            check(r.residual < 1e-8, || format!("reduction n={n}: residual {:e}", r.residual))?;
            worst_reduction = worst_reduction.max(r.residual);
        }
    }
    Ok(format!(
        "partition {worst_partition:.1e}, weights/identities {worst_exact:.1e}, reduction {worst_reduction:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("state counts against the product formula", state_counts, 10),
        ("q from counts equals q from the determinant", q_cross, 300),
        ("q polynomial property suite", q_properties, 60),
        ("census equations on every state", lemma, 30),
        ("count table corollaries", corollaries, 60),
        ("randomized partition function identity", theorem, 120),
        ("transfer matrix against brute force and n = 8", transfer, 300),
        ("confluent determinant against line interpolation", confluent, 60),
        ("elliptic layer", elliptic, 120),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(_) if secs > budget as f64 => Err(format!("over the {budget}s budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
