//! Acceptance gate: one test per shipped guarantee, each printing a single
//! [PASS]/[FAIL] line (visible under `--nocapture`). Every check is exact;
//! elapsed times are printed so the stated budgets are auditable.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use betapart::{
    afs_congruence_check, bm, classify, count, count_integer_base, complex_zero_partition,
    oracle_count, recurrence_check, trace_condition_family, verify_leading_term_structure,
    verify_reciprocal_bound, verify_small_power_bounds, verify_trace_power_counts, witness_case,
    Partition, QuadElem, QuadPoly, Verdict,
};

fn report(ok: bool, name: &str, detail: &str, started: Instant) {
    let secs = started.elapsed().as_secs_f64();
    println!(
        "[{}] {name}: {detail} ({secs:.2}s)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{name}: {detail}");
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r - 1..=r + 1).any(|k| k >= 0 && k * k == n)
}

/// Primitive irreducible (A, B, C) with A ≤ 20, |B|, |C| ≤ 20, Δ > 0.
fn real_grid() -> Vec<QuadPoly> {
    let mut grid = Vec::new();
    for a in 1i64..=20 {
        for b in -20i64..=20 {
            for c in -20i64..=20 {
                let g = gcd(a, gcd(b.abs(), c.abs()));
                if g != 1 {
                    continue;
                }
                let delta = b * b - 4 * a * c;
                if delta <= 0 || is_square(delta) {
                    continue;
                }
                grid.push(QuadPoly::new(a, b, c).unwrap());
            }
        }
    }
    grid
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Random digit vector with at least one nonzero entry, evaluated at β.
fn random_target(rng: &mut ChaCha8Rng, beta: &QuadElem) -> (Partition, QuadElem) {
    loop {
        let len = rng.gen_range(1..=3);
        let digits: Vec<BigInt> = (0..len)
            .map(|_| BigInt::from(rng.gen_range(0i64..=3)))
            .collect();
        if digits.iter().all(|d| d.is_zero()) {
            continue;
        }
        let part = Partition::new(digits).unwrap();
        let alpha = part.evaluate(beta).unwrap();
        return (part, alpha);
    }
}

fn random_finite_poly(rng: &mut ChaCha8Rng) -> QuadPoly {
    loop {
        let a = rng.gen_range(1i64..=5);
        let b = rng.gen_range(-12i64..=12);
        let c = rng.gen_range(-12i64..=12);
        let Ok(f) = QuadPoly::new(a, b, c) else {
            continue;
        };
        if f.is_complex() {
            continue;
        }
        if matches!(classify(&f).map(|c| c.verdict), Ok(Verdict::AlwaysFinite)) {
            return f;
        }
    }
}

#[test]
fn criterion_1_trace_power_counts_across_pell_family() {
    let started = Instant::now();
    let mut polys = 0usize;
    let mut ok = true;
    for d in [2i64, 3, 5, 6, 7] {
        let family = trace_condition_family(d, 3).unwrap();
        ok &= family.len() == 3;
        for f in family {
            let rep = verify_trace_power_counts(&f, 4).unwrap();
            ok &= rep.all_ok;
            polys += 1;
        }
    }
    report(
        ok && polys == 15,
        "criterion 1",
        &format!("count((Tr β)·βⁿ) = n+1 for n ≤ 4 on {polys} Pell-derived polynomials"),
        started,
    );
}

#[test]
fn criterion_2_search_matches_divisibility_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let mut checked = 0usize;
    let mut ok = true;
    while checked < 50 {
        let f = random_finite_poly(&mut rng);
        let (beta, _) = f.roots().unwrap();
        let (seed, alpha) = random_target(&mut rng, &beta);

        let searched = count(&f, &alpha).unwrap();

        // Matched caps: J is the largest power with β^J ≤ α, so quotient
        // degrees never exceed J; digit values are bounded by
        // M₀ = floor(α), and each division step can scale a coefficient by
        // at most |B| + |C| + 1, giving a sound coefficient cap.
        let one = QuadElem::one(beta.d().clone()).unwrap();
        let mut j = 0usize;
        let mut pw = one.clone();
        loop {
            let next = pw.checked_mul(&beta).unwrap();
            if next.checked_sub(&alpha).unwrap().is_positive() {
                break;
            }
            pw = next;
            j += 1;
        }
        let m0 = alpha.floor();
        let growth: BigInt = f.b().abs() + f.c().abs() + 1;
        let cap = growth.pow(j as u32 + 1) * &m0;
        let oracled = oracle_count(&f, &seed, j, &cap);

        ok &= BigInt::from(searched) == BigInt::from(oracled);
        checked += 1;
    }
    report(
        ok,
        "criterion 2",
        &format!("digit search equals divisibility oracle on {checked} always-finite instances"),
        started,
    );
}

#[test]
fn criterion_3_integer_base_tables_and_congruences() {
    let started = Instant::now();
    let mut ok = true;
    for m in [2u64, 3, 5] {
        for n in 0usize..=100 {
            ok &= count_integer_base(m, n as u64).unwrap() == bm(m, n).unwrap();
        }
        for n in 0usize..=200 {
            let (_, _, congruent) = afs_congruence_check(m, n).unwrap();
            ok &= congruent;
        }
    }
    report(
        ok,
        "criterion 3",
        "m ∈ {2,3,5}: counts match recurrence tables for n ≤ 100; digit-product congruence holds for n ≤ 200",
        started,
    );
}

#[test]
fn criterion_4_shift_recurrence_on_random_probes() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4ec2);
    let mut ok = true;
    let probes = 120usize;
    for _ in 0..probes {
        let f = random_finite_poly(&mut rng);
        let (beta, _) = f.roots().unwrap();
        let (_, alpha) = random_target(&mut rng, &beta);
        ok &= recurrence_check(&f, &alpha).unwrap();
    }
    report(
        ok,
        "criterion 4",
        &format!("count(βα) = count(βα − 1) + count(α) on {probes} random probes"),
        started,
    );
}

#[test]
fn criterion_5_classifier_routes_agree_exhaustively() {
    let started = Instant::now();
    let grid = real_grid();
    let mut ok = true;
    for f in &grid {
        // Independent route 1: coefficient signs.
        let (a, b, c) = (f.a(), f.b(), f.c());
        let two_a_plus_b: BigInt = 2 * a + b;
        let sum: BigInt = a + b + c;
        let coeff_finite = !two_a_plus_b.is_positive() || sum.is_negative();
        // Independent route 2: exact comparison of the larger root with 1.
        let (beta, _) = f.roots().unwrap();
        let one = QuadElem::one(beta.d().clone()).unwrap();
        let root_finite = beta.checked_sub(&one).unwrap().is_positive();

        ok &= coeff_finite == root_finite;
        let verdict = classify(f).unwrap().verdict;
        ok &= (verdict == Verdict::AlwaysFinite) == coeff_finite;
    }
    report(
        ok,
        "criterion 5",
        &format!(
            "coefficient and root verdicts agree on all {} primitive irreducible (A,B,C), A ≤ 20, |B|,|C| ≤ 20, Δ > 0",
            grid.len()
        ),
        started,
    );
}

#[test]
fn criterion_6_witness_families_certify_infinite_targets() {
    let started = Instant::now();
    let mut ok = true;
    let mut certified = 0usize;
    for f in real_grid() {
        let cls = classify(&f).unwrap();
        if cls.verdict != Verdict::InfiniteCapable {
            continue;
        }
        let family = witness_case(&f, cls.reason, 5).unwrap();
        // `verified` re-evaluates each member against the target and checks
        // exact divisibility; distinctness is asserted independently here.
        let members = family.verified().unwrap();
        ok &= members.len() == 5;
        let distinct: HashSet<String> = members.iter().map(|p| p.digit_string()).collect();
        ok &= distinct.len() == 5;
        certified += 1;
    }
    report(
        ok && certified > 0,
        "criterion 6",
        &format!("5 distinct verified partitions of the witness target for all {certified} infinite-capable grid entries"),
        started,
    );
}

#[test]
fn criterion_7_leading_term_structure() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ead);
    let mut seen = HashSet::new();
    let mut instances = Vec::new();
    while instances.len() < 20 {
        let e = rng.gen_range(3i64..=12);
        // Partition counts of E·βⁿ grow combinatorially once C exceeds
        // 2E; staying below keeps full enumeration cheap while covering
        // norms on both sides of the trace.
        let c = rng.gen_range(1i64..=(2 * e - 3).min((e * e - 1) / 4));
        if is_square(e * e - 4 * c) || !seen.insert((e, c)) {
            continue;
        }
        instances.push(QuadPoly::new(1, -e, c).unwrap());
    }
    let mut ok = true;
    for f in &instances {
        for n in 0usize..=5 {
            ok &= verify_leading_term_structure(f, n).unwrap().all_ok;
        }
    }
    report(
        ok,
        "criterion 7",
        "every nontrivial partition of E·βⁿ has degree n+1 and leading digit 1 on 20 eligible β, n ≤ 5",
        started,
    );
}

#[test]
fn criterion_8_reciprocal_and_small_power_bounds() {
    let started = Instant::now();
    // Monic, totally positive, Tr > Nm: the reciprocal base is driven
    // through its conjugate embedding.
    let reciprocal_instances = [
        (4i64, 2i64),
        (5, 3),
        (6, 3),
        (6, 4),
        (7, 3),
        (7, 5),
        (8, 3),
        (8, 5),
        (9, 7),
        (10, 7),
    ];
    let mut ok = true;
    for (e, c) in reciprocal_instances {
        let f = QuadPoly::new(1, -e, c).unwrap();
        ok &= verify_reciprocal_bound(&f, 6).unwrap().all_ok;
    }
    // C ≥ 2E: both displayed expansion groups; 2E−3 ≤ C < 2E: cubes only.
    let small_power_instances = [
        (9i64, 19i64),
        (10, 20),
        (10, 22),
        (11, 22),
        (11, 25),
        (7, 11),
        (8, 13),
        (8, 14),
        (9, 15),
        (9, 16),
    ];
    for (e, c) in small_power_instances {
        let f = QuadPoly::new(1, -e, c).unwrap();
        ok &= verify_small_power_bounds(&f).unwrap().all_ok;
    }
    report(
        ok,
        "criterion 8",
        "count(E·βⁿ) ≤ count over 1/β of E/β on 10 instances, n ≤ 6; explicit square/cube expansions give counts ≥ 4 / ≥ 5 on 10 instances",
        started,
    );
}

/// Remainder of the digit polynomial modulo Ax² + Bx + C over ℚ, reduced
/// from the top; divisibility means both remainder coefficients vanish.
fn divides_exactly(f: &QuadPoly, digits: &[BigInt]) -> bool {
    let mut c: Vec<BigRational> = digits
        .iter()
        .map(|d| BigRational::from_integer(d.clone()))
        .collect();
    while c.len() < 3 {
        c.push(BigRational::zero());
    }
    let a = BigRational::from_integer(f.a().clone());
    let b = BigRational::from_integer(f.b().clone());
    let cc = BigRational::from_integer(f.c().clone());
    for i in (2..c.len()).rev() {
        let t = &c[i] / &a;
        c[i] = BigRational::zero();
        let b_term = &t * &b;
        c[i - 1] -= b_term;
        let c_term = &t * &cc;
        c[i - 2] -= c_term;
    }
    c[0].is_zero() && c[1].is_zero()
}

#[test]
fn criterion_9_complex_zero_partitions() {
    let started = Instant::now();
    let polys = [
        (1i64, 0i64, 1i64),
        (1, -1, 1),
        (1, 1, 1),
        (2, 1, 3),
        (1, 0, 2),
        (1, 1, 2),
        (3, 2, 5),
        (1, -2, 5),
        (2, -3, 4),
        (5, 1, 1),
    ];
    let mut ok = true;
    for (a, b, c) in polys {
        let f = QuadPoly::new(a, b, c).unwrap();
        assert!(f.is_complex());
        let zero_part = complex_zero_partition(&f).unwrap();
        let coeffs = zero_part.coeffs();
        let nonzero = coeffs.iter().filter(|d| !d.is_zero()).count();
        ok &= nonzero >= 2;
        ok &= coeffs.iter().all(|d| !d.is_negative());
        ok &= divides_exactly(&f, coeffs);
    }
    report(
        ok,
        "criterion 9",
        "nontrivial non-negative zero partitions, exactly divisible by f, for 10 complex quadratics",
        started,
    );
}
