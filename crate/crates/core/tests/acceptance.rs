//! One PASS/FAIL line per acceptance criterion. Tolerances and runtime budgets are pinned
//! below. The process exits non-zero when the failing set differs from
//! `KNOWN_UNATTAINABLE`, so a regression or an unexpected pass both stop the run while the
//! recorded failure still prints as FAIL.

mod common;

use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mondrian::app::{integer_search, perimeter_report};
use mondrian::exactnum::{rat, BigRational, FieldElement, IntPolynomial};
use mondrian::extend::{closed_form_dims, excluded_ratios, perfect_square_partition, rescale};
use mondrian::geometry::{is_proper, verify, Partition};
use mondrian::solver::{census, SolutionCensus};
use mondrian::spiral::{closure_polynomial, solve_spiral};
use mondrian::MondrianError;

const EXACT_TOL: f64 = 1e-9;
const PERIMETER_K7_TOL: f64 = 1e-12;
const PERIMETER_K8_TOL: f64 = 1e-4;
const DEFECT_BOUND_N100: i64 = 74;
const PROPERTY_CASES: u32 = 1000;

/// Criterion 4: the published sides of the spiral eight-rectangle solution are not
/// consistent with equal areas at 1e-9 (`x3 = 0.8068449586` against `1/(8 y3) = 0.8068449576`),
/// so no perfect partition can match them at that tolerance.
const KNOWN_UNATTAINABLE: &[usize] = &[4];

const CLOSURES: [(usize, &[i64]); 6] = [
    (5, &[1, -5, 5]),
    (6, &[8, -29, 24]),
    (7, &[-15, 101, -187, 105]),
    (8, &[36, -342, 1023, -1224, 512]),
    (9, &[-735, 8582, -33911, 60423, -50211, 15876]),
    (10, &[-1920, 40192, -315644, 1196193, -2435892, 2738920, -1605800, 384000]),
];

const LARGEST_ROOTS: [f64; 6] = [0.7236067977, 0.7821667446, 0.8239265962, 0.8520842333, 0.8720043100, 0.8869492506];

const K7_SIDES: [(f64, f64); 7] = [
    (0.8239265962, 0.1733857646),
    (0.1760734038, 0.8113499245),
    (0.7572599296, 0.1886500755),
    (0.2427400704, 0.5885189973),
    (0.6000000000, 0.2380952381),
    (0.2239265962, 0.6379641599),
    (0.3572599296, 0.3998689219),
];

/// Published sides of the eight-rectangle spiral solution.
const K8_FIRST: [(f64, f64); 8] = [
    (0.8520842333, 0.1466991115),
    (0.1479157667, 0.8450755642),
    (0.8068449586, 0.1549244358),
    (0.1931550414, 0.6471485242),
    (0.6063476421, 0.2061523643),
    (0.2457365912, 0.5086747536),
    (0.6589291919, 0.1897016991),
    (0.4131926007, 0.3025223893),
];

/// Published sides of the second proper eight-rectangle solution.
const K8_SECOND: [(f64, f64); 8] = [
    (0.8317625891, 0.1502832679),
    (0.1682374109, 0.7429976444),
    (0.4863768650, 0.2570023556),
    (0.5136231350, 0.2433690998),
    (0.2061523676, 0.6063476323),
    (0.6256102215, 0.1998049196),
    (0.3181394541, 0.3929094569),
    (0.3074707674, 0.4065427127),
];

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Largest side deviation from a published table, minimized over the transpose and matched
/// by greedy nearest pairing.
fn side_deviation(p: &Partition, table: &[(f64, f64)]) -> f64 {
    let sides: Vec<(f64, f64)> = p.approx_rects().iter().map(|r| (r[2], r[3])).collect();
    [false, true]
        .into_iter()
        .map(|transpose| {
            let mut pool: Vec<(f64, f64)> = sides.iter().map(|&(w, h)| if transpose { (h, w) } else { (w, h) }).collect();
            let mut worst: f64 = 0.0;
            for &(x, y) in table {
                let (i, d) = pool
                    .iter()
                    .enumerate()
                    .map(|(i, &(w, h))| (i, (w - x).abs().max((h - y).abs())))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                worst = worst.max(d);
                pool.remove(i);
            }
            worst
        })
        .fold(f64::INFINITY, f64::min)
}

fn proper_row_partition(c: &SolutionCensus, x1: f64) -> Option<&Partition> {
    c.rows.iter().find(|r| r.proper && r.mondrian && (r.x1 - x1).abs() < EXACT_TOL).and_then(|r| r.partition.as_ref())
}

fn polynomial_identity() -> Outcome {
    let bad: Vec<usize> = CLOSURES
        .iter()
        .filter(|(k, c)| closure_polynomial(*k).ok() != Some(IntPolynomial::from_i64s(c)))
        .map(|(k, _)| *k)
        .collect();
    check(bad.is_empty(), format!("closure polynomials k = 5..10 exact, mismatches {bad:?}"))
}

fn root_values() -> Outcome {
    let mut worst: f64 = 0.0;
    for (k, z) in (5..=10).zip(LARGEST_ROOTS) {
        let got = solve_spiral(k).map_err(|e| format!("k = {k}: {e}"))?.root.to_f64();
        worst = worst.max((got - z).abs());
    }
    check(worst < EXACT_TOL, format!("max |z1 - table| = {worst:.2e} (tol {EXACT_TOL:e})"))
}

fn k7_certification() -> Outcome {
    let p = solve_spiral(7).map_err(|e| e.to_string())?.partition;
    let dev = p
        .rects()
        .iter()
        .zip(K7_SIDES)
        .map(|(r, (x, y))| (r.w.to_f64() - x).abs().max((r.h.to_f64() - y).abs()))
        .fold(0.0, f64::max);
    let r5 = &p.rects()[4];
    let exact = r5.w.as_rational() == Some(rat(3, 5)) && r5.h.as_rational() == Some(rat(5, 21));
    let v = verify(&p);
    let certified = v.tiling_ok && v.perfect && v.mondrian && v.admissible && v.proper;
    check(
        dev < EXACT_TOL && exact && certified,
        format!("side deviation {dev:.2e}, x5 = 3/5 and y5 = 5/21: {exact}, full verifier: {certified}"),
    )
}

fn k8_both_solutions(c8: &SolutionCensus) -> Outcome {
    let first = proper_row_partition(c8, 0.8520842333).ok_or("spiral solution missing from census")?;
    let second = proper_row_partition(c8, 0.8317625891).ok_or("second solution missing from census")?;
    let layouts: Vec<&str> = c8.rows.iter().filter(|r| r.proper && r.mondrian).map(|r| r.layout.as_str()).collect();
    let distinct = layouts.len() == 2 && layouts[0] != layouts[1];
    let (d5, d7) = (side_deviation(first, &K8_FIRST), side_deviation(second, &K8_SECOND));
    check(
        d5 < EXACT_TOL && d7 < EXACT_TOL && distinct,
        format!("first table deviation {d5:.2e}, second table deviation {d7:.2e} (tol {EXACT_TOL:e}), layouts {layouts:?}"),
    )
}

fn census_counts(c8: &SolutionCensus) -> Outcome {
    let c5 = census(5).map_err(|e| e.to_string())?;
    let c6 = census(6).map_err(|e| e.to_string())?;
    let c7 = census(7).map_err(|e| e.to_string())?;
    let z5 = (5.0 + 5f64.sqrt()) / 10.0;
    let k5_ok = c5.perfect_admissible() == 1
        && c5.perfect_mondrian() == 0
        && c5.rows.iter().any(|r| r.admissible && (r.x1 - z5).abs() < EXACT_TOL);
    let counts = (
        c5.perfect_admissible(),
        c5.perfect_mondrian(),
        c6.perfect_mondrian(),
        c7.proper_perfect_mondrian(),
        c8.proper_perfect_mondrian(),
    );
    let uncertified = c5.uncertified() + c6.uncertified() + c7.uncertified() + c8.uncertified();
    check(
        k5_ok && counts.2 == 0 && counts.3 == 1 && counts.4 == 2 && uncertified == 0,
        format!("(k5 admissible, k5 mondrian, k6 mondrian, k7 proper, k8 proper) = {counts:?}, uncertified {uncertified}"),
    )
}

fn extension_chain() -> Outcome {
    for k in 8..=16 {
        let p = perfect_square_partition(k).map_err(|e| format!("k = {k}: {e}"))?;
        let dims = closed_form_dims(k).map_err(|e| format!("k = {k}: {e}"))?;
        let closed = p.rects().iter().zip(&dims).all(|(r, (w, h))| &r.w == w && &r.h == h);
        if !verify(&p).is_perfect_mondrian() || is_proper(&p).0 || !closed {
            return Err(format!("k = {k} fails (closed forms match: {closed})"));
        }
    }
    Ok("k = 8..16 perfect Mondrian, not proper, equal to closed forms".into())
}

fn rescale_condition() -> Outcome {
    let p = solve_spiral(7).map_err(|e| e.to_string())?.partition;
    let one = FieldElement::one(p.base());
    let threshold = (&p.rects()[0].w * &p.rects()[1].w).scale(&rat(7, 1));
    let rejected = rescale(&p, &one, &threshold) == Err(MondrianError::CongruenceViolation { pairs: vec![(0, 1)] });
    let ratios = excluded_ratios(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let aspect = loop {
        let r = BigRational::new(rng.random_range(1i64..10_000).into(), rng.random_range(1i64..10_000).into());
        let a = FieldElement::from_rational(p.base(), r);
        if ratios.iter().all(|(_, t)| t != &a) {
            break a;
        }
    };
    let recertified = rescale(&p, &one, &aspect).map(|q| verify(&q).is_perfect_mondrian()).unwrap_or(false);
    check(
        rejected && recertified && ratios.len() == 21,
        format!(
            "threshold 7*x1*x2 rejected with pair (1,2): {rejected}; aspect {} re-certified: {recertified}; {} thresholds",
            aspect.exact_string(),
            ratios.len()
        ),
    )
}

fn integer_mondrian() -> Outcome {
    let r = integer_search(100, 7, 3).map_err(|e| e.to_string())?;
    check(r.defect <= DEFECT_BOUND_N100, format!("n = 100, window 3: defect {} (bound {DEFECT_BOUND_N100})", r.defect))
}

fn perimeter_values(c8: &SolutionCensus) -> Outcome {
    let p7 = solve_spiral(7).map_err(|e| e.to_string())?.partition;
    let r7 = perimeter_report(&p7);
    let base = p7.base();
    let exact = &FieldElement::from_rational(base, rat(32, 21)) + &FieldElement::generator(base).scale(&rat(4, 7));
    let want7 = (192.0 + 4.0 * 19f64.sqrt()) / 105.0;
    let dev7 = (r7.max_perimeter.to_f64() - want7).abs();
    let second = proper_row_partition(c8, 0.8317625891).ok_or("second k = 8 solution missing")?;
    let r8 = perimeter_report(second);
    let dev8 = (r8.max_perimeter.to_f64() - 1.9641).abs();
    let refs = (r7.reference.map(|r| r.0), r8.reference.map(|r| r.0));
    check(
        r7.max_perimeter == exact && dev7 < PERIMETER_K7_TOL && dev8 < PERIMETER_K8_TOL && refs == (Some("22/14"), Some("17/12")),
        format!(
            "k7 {} (exact (192+4*sqrt19)/105: {}), k8 {:.10} (|d| {dev8:.1e}), references {refs:?}",
            r7.max_perimeter.to_decimal(14),
            r7.max_perimeter == exact,
            r8.max_perimeter.to_f64()
        ),
    )
}

fn property_suites() -> Outcome {
    let config = Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() };
    let run = |name: &str, res: Result<(), String>| res.map_err(|e| format!("{name}: {e}"));
    run("sturm", TestRunner::new(config.clone()).run(&common::sturm_cases(), common::sturm_count_stays_one).map_err(|e| e.to_string()))?;
    run(
        "field",
        TestRunner::new(config.clone())
            .run(&common::ratfun_cases(), common::field_reduction_is_a_homomorphism)
            .map_err(|e| e.to_string()),
    )?;
    run(
        "tiling",
        TestRunner::new(config.clone())
            .run(&common::tiling_cases(), common::tiling_sweep_agrees_with_area_sum)
            .map_err(|e| e.to_string()),
    )?;
    run(
        "congruence",
        TestRunner::new(config)
            .run(&common::rect_pair_cases(), common::congruence_is_symmetric_and_rotation_invariant)
            .map_err(|e| e.to_string()),
    )?;
    Ok(format!("4 suites x {PROPERTY_CASES} cases"))
}

fn report(n: usize, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let (pass, detail) = match outcome {
        Ok(d) => (in_budget, d),
        Err(d) => (false, d),
    };
    let timing = format!("{:.2}s of {}s budget", elapsed.as_secs_f64(), budget.as_secs());
    println!("criterion {n:>2}: {} | {detail} | {timing}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn main() {
    let secs = Duration::from_secs;
    let census8 = std::cell::OnceCell::new();
    let c8 = || census8.get_or_init(|| census(8).expect("census(8)"));
    let results = [
        report(1, secs(1), polynomial_identity),
        report(2, secs(1), root_values),
        report(3, secs(5), k7_certification),
        report(4, secs(30), || k8_both_solutions(c8())),
        report(5, secs(600), || census_counts(c8())),
        report(6, secs(30), extension_chain),
        report(7, secs(5), rescale_condition),
        report(8, secs(300), integer_mondrian),
        report(9, secs(1), || perimeter_values(c8())),
        report(10, secs(60), property_suites),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    println!(
        "acceptance: {} of 10 criteria pass; failing {failed:?}; known unattainable {KNOWN_UNATTAINABLE:?}",
        10 - failed.len()
    );
    if failed != KNOWN_UNATTAINABLE {
        std::process::exit(1);
    }
}
