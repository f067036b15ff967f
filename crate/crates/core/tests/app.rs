use mondrian::app::*;
use mondrian::exactnum::{rat, FieldElement};
use mondrian::extend::perfect_square_partition;
use mondrian::geometry::rational_partition;
use mondrian::spiral::solve_spiral;
use mondrian::MondrianError;

fn k7() -> mondrian::geometry::Partition {
    solve_spiral(7).unwrap().partition
}

#[test]
fn integer_search_n100_meets_reference_defect() {
    let r = integer_search(100, 7, 3).unwrap();
    assert!(r.defect <= 74, "defect {}", r.defect);
    // Frozen from the exhaustive search: a pure function of (n, k, window).
    assert_eq!(r.defect, 64);
    assert_eq!(r.rounded, vec![82, 24, 60, 83, 19, 59]);
    assert_eq!(r.candidates, 7u64.pow(6));
    assert_eq!(r.defect, r.best.defect);
    assert!(verify_integer(&r.best));
}

#[test]
fn integer_search_n10000_meets_reference_defect() {
    let r = integer_search(10_000, 7, 3).unwrap();
    assert!(r.defect <= 6076, "defect {}", r.defect);
    assert!(verify_integer(&r.best));
}

#[test]
fn tiny_square_without_window_has_no_candidate() {
    assert_eq!(integer_search(10, 7, 0), Err(MondrianError::NoValidCandidate));
}

#[test]
fn defect_is_monotone_in_window() {
    let defects: Vec<i64> = (0..=3).map(|w| integer_search(60, 7, w).map(|r| r.defect).unwrap_or(i64::MAX)).collect();
    assert!(defects.windows(2).all(|w| w[1] <= w[0]), "{defects:?}");
}

#[test]
fn integer_verifier_rejects_congruent_and_gapped() {
    let halves = IntegerPartition {
        n: 2,
        rects: vec![IntRect { x: 0, y: 0, w: 1, h: 2 }, IntRect { x: 1, y: 0, w: 1, h: 2 }],
        defect: 0,
    };
    assert!(!verify_integer(&halves));
    let gapped = IntegerPartition {
        n: 3,
        rects: vec![IntRect { x: 0, y: 0, w: 1, h: 3 }, IntRect { x: 1, y: 0, w: 1, h: 2 }],
        defect: 1,
    };
    assert!(!verify_integer(&gapped));
}

#[test]
fn json_round_trip_is_exact() {
    let p = k7();
    let back = from_json(&to_json(&p)).unwrap();
    assert_eq!(back, p);
    for (a, b) in back.rects().iter().zip(p.rects()) {
        assert_eq!(a.w.coeffs(), b.w.coeffs());
        assert_eq!(a.h.coeffs(), b.h.coeffs());
    }
}

#[test]
fn json_round_trip_after_extension() {
    let p = perfect_square_partition(13).unwrap();
    assert_eq!(from_json(&to_json(&p)).unwrap(), p);
}

#[test]
fn json_round_trip_rational_base() {
    let p = rational_partition(rat(1, 1), rat(1, 1), &[[rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 1)], [rat(1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]])
        .unwrap();
    assert_eq!(from_json(&to_json(&p)).unwrap(), p);
}

#[test]
fn tampered_width_fails_certification() {
    let mut doc = to_doc(&k7());
    doc.rects[0].w.coeffs = vec!["9/10".into()];
    let text = serde_json::to_string(&doc).unwrap();
    assert!(matches!(from_json(&text), Err(MondrianError::CertificationFailure(_))));
}

#[test]
fn malformed_documents_are_parse_errors() {
    for text in [
        "",
        "{}",
        "[1,2]",
        r#"{"k":2,"outer":{"w":{"coeffs":["1/1"],"approx":"1"},"h":{"coeffs":["1/1"],"approx":"1"}},"base":{"poly":[0,1],"interval":["0/1","0/1"]},"rects":[]}"#,
    ] {
        assert!(matches!(from_json(text), Err(MondrianError::ParseError(_))), "{text:?}");
    }
    let mut doc = to_doc(&k7());
    doc.base.poly = vec![IntLiteral::Small(-4), IntLiteral::Small(0), IntLiteral::Small(1)];
    assert!(matches!(from_doc(&doc), Err(MondrianError::ParseError(_))), "reducible base");
    let mut doc = to_doc(&k7());
    doc.base.interval = ["0/1".into(), "1/1".into()];
    assert!(matches!(from_doc(&doc), Err(MondrianError::ParseError(_))), "two roots in the interval");
    let mut doc = to_doc(&k7());
    doc.rects[3].x.coeffs = vec!["1/0".into()];
    assert!(matches!(from_doc(&doc), Err(MondrianError::ParseError(_))), "zero denominator");
}

#[test]
fn svg_matches_golden_file() {
    let golden = include_str!("golden/spiral_k7.svg");
    assert_eq!(render_svg(&k7(), true), golden);
}

#[test]
fn svg_is_deterministic_and_counts_rects() {
    let p = k7();
    let a = render_svg(&p, false);
    assert_eq!(a, render_svg(&p, false));
    assert_eq!(a.matches("<rect ").count(), 8);
    assert!(a.contains("viewBox=\"0 0 1000 1000\""));
}

#[test]
fn svg_of_halves_and_integer_solution() {
    let halves = rational_partition(rat(1, 1), rat(1, 1), &[[rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 1)], [rat(1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]])
        .unwrap();
    let s = render_svg(&halves, false);
    assert!(s.contains(r#"<rect id="R1" x="0" y="0" width="500" height="1000""#));
    assert!(s.contains(r#"<rect id="R2" x="500" y="0" width="500" height="1000""#));
    let best = integer_search(100, 7, 3).unwrap().best;
    let s = render_integer_svg(&best, true);
    // R1 of the search result is (0, 83, 82, 17): its top edge is the square's top edge.
    assert!(s.contains(r#"<rect id="R1" x="0" y="0" width="820" height="170""#), "{s}");
}

#[test]
fn svg_write_failure_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.svg");
    assert!(matches!(write_svg(&missing, "x"), Err(MondrianError::IoFailure(_))));
}

#[test]
fn perimeter_of_k7_solution() {
    let r = perimeter_report(&k7());
    // (192 + 4·sqrt(19)) / 105
    let expected = (192.0 + 4.0 * 19f64.sqrt()) / 105.0;
    assert!((r.max_perimeter.to_f64() - expected).abs() < 1e-12);
    assert_eq!(r.rect, 0);
    assert_eq!(r.reference.map(|x| x.0), Some("22/14"));
    assert!(r.to_string().contains("22/14"));
}

#[test]
fn perimeter_without_reference() {
    let r = perimeter_report(&perfect_square_partition(9).unwrap());
    assert!(r.reference.is_none());
    assert!(r.to_string().contains("unavailable"));
}

#[test]
fn no_integer_report_for_small_k() {
    let r = no_perfect_integer(7).unwrap();
    assert!(r.holds);
    let k5 = &r.entries[3];
    assert_eq!((k5.k, k5.perfect_mondrian), (5, 0));
    let k7 = r.entries.last().unwrap();
    assert_eq!(k7.perfect_mondrian, 1);
    assert_eq!(k7.witnesses[0].minimal_polynomial, "15x^2 - 16x + 3");
    assert_eq!(k7.rejected_rational_roots, vec!["5/7".to_string()]);
    assert_eq!(no_perfect_integer(9).unwrap_err(), MondrianError::KTooLarge { k: 9, max: 8 });
}

#[test]
fn aspect_parser() {
    assert_eq!(parse_aspect("3/2").unwrap(), rat(3, 2));
    assert_eq!(parse_aspect("4").unwrap(), rat(4, 1));
    for bad in ["", "0/1", "-1/2", "1/0", "a/b", "1/2/3", " / "] {
        assert!(matches!(parse_aspect(bad), Err(MondrianError::ParseError(_))), "{bad:?}");
    }
}

#[test]
fn rescaled_document_round_trips() {
    let p = k7();
    let one = FieldElement::one(p.base());
    let b2 = one.scale(&rat(3, 2));
    let q = mondrian::extend::rescale(&p, &one, &b2).unwrap();
    assert_eq!(from_json(&to_json(&q)).unwrap(), q);
}
