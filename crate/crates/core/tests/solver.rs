use mondrian::geometry::{congruent_pairs, verify, Partition};
use mondrian::layouts::Layout;
use mondrian::solver::{build_system, census, census_with_bound, newton_solutions, solve_system, Certification, Closure, NewtonConfig};
use mondrian::MondrianError;

/// Published approximate sides of the second proper eight-rectangle solution.
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

/// Largest deviation between the published sides and the partition's sides, minimized over
/// the transpose (flips keep side lengths) and matched by greedy nearest pairing.
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

#[test]
fn census_counts_for_small_k() {
    let c5 = census(5).unwrap();
    assert_eq!((c5.perfect_admissible(), c5.perfect_mondrian()), (1, 0));
    let row = c5.rows.iter().find(|r| r.admissible).unwrap();
    assert!((row.x1 - (5.0 + 5f64.sqrt()) / 10.0).abs() < 1e-12);
    assert_eq!(census(6).unwrap().perfect_mondrian(), 0);
    let c7 = census(7).unwrap();
    assert_eq!((c7.perfect_mondrian(), c7.proper_perfect_mondrian(), c7.uncertified()), (1, 1, 0));
    let proper = c7.rows.iter().find(|r| r.proper && r.mondrian).unwrap();
    assert_eq!(proper.layout, "H1H1V1V2V2H3");
    assert!((proper.x1 - 0.8239265962).abs() < 1e-9);
}

#[test]
fn small_k_has_no_perfect_mondrian() {
    for k in 2..=4 {
        let c = census(k).unwrap();
        assert_eq!(c.perfect_mondrian(), 0, "k = {k}");
    }
}

#[test]
fn census_bounds() {
    assert_eq!(census(9).unwrap_err(), MondrianError::KTooLarge { k: 9, max: 8 });
    assert_eq!(census_with_bound(1, 8).unwrap_err(), MondrianError::UnsupportedK { k: 1, min: 2 });
}

#[test]
fn symmetric_alternative_pairs_off_six_rectangles() {
    let layout = Layout::from_code("H1V1V2H2H2V2.1").unwrap();
    let sols = solve_system(&build_system(&layout, 7).unwrap());
    assert!(!sols.partitions.is_empty());
    for p in &sols.partitions {
        let report = verify(p);
        assert!(report.tiling_ok && report.perfect && !report.mondrian);
        let pairs = congruent_pairs(p);
        assert_eq!(pairs.len(), 3, "{pairs:?}");
        let mut members: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        members.sort();
        members.dedup();
        assert_eq!(members.len(), 6, "three disjoint pairs");
    }
}

#[test]
fn spiral_system_reduces_to_a_cubic() {
    let layout = Layout::from_code("H1H1V1V2V2H3").unwrap();
    let sys = build_system(&layout, 7).unwrap();
    assert_eq!(sys.unknowns(), 6);
    match &sys.reduction().unwrap().closure {
        Closure::Polynomial(p) => assert_eq!(p.degree(), Some(3)),
        other => panic!("unexpected closure {other:?}"),
    }
}

#[test]
fn exact_and_newton_agree() {
    for code in ["H1H1V1V2V2H3", "H1V1V2H2H2V2.1"] {
        let sys = build_system(&Layout::from_code(code).unwrap(), 7).unwrap();
        let exact = solve_system(&sys);
        let numeric = newton_solutions(&sys, &NewtonConfig::default());
        for p in &exact.partitions {
            let want = p.approx_rects();
            let hit = numeric.iter().any(|s| {
                s.rects.iter().zip(&want).all(|(a, b)| a.iter().zip(b).all(|(u, v)| (u - v).abs() < 1e-9))
            });
            assert!(hit, "{code}: exact solution missing from Newton results");
        }
        assert!(numeric.iter().all(|s| s.certified && s.residual < 1e-12));
    }
}

#[test]
fn k8_second_solution_matches_published_sides() {
    let c = census(8).unwrap();
    assert_eq!(c.uncertified(), 0);
    assert_eq!((c.perfect_mondrian(), c.proper_perfect_mondrian()), (6, 2));
    let mut x1: Vec<f64> = c.rows.iter().filter(|r| r.proper && r.mondrian).map(|r| r.x1).collect();
    x1.sort_by(f64::total_cmp);
    assert!((x1[0] - 0.8317625891).abs() < 1e-9 && (x1[1] - 0.8520842333).abs() < 1e-9, "{x1:?}");
    let second = c.rows.iter().find(|r| r.proper && r.mondrian && (r.x1 - 0.8317625891).abs() < 1e-9).unwrap();
    assert_eq!(second.certification, Certification::Exact);
    let dev = side_deviation(second.partition.as_ref().unwrap(), &K8_SECOND);
    assert!(dev < 1e-9, "deviation {dev:e}");
}
