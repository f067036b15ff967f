use proptest::prelude::*;

use mondrian::exactnum::{rat, BigRational, FieldElement};
use mondrian::extend::{closed_form_dims, excluded_ratios, extend_once, perfect_square_partition, rescale, rescale_plan};
use mondrian::geometry::{is_proper, verify};
use mondrian::spiral::solve_spiral;
use mondrian::MondrianError;

#[test]
fn extension_chain_is_certified_and_matches_closed_forms() {
    for k in 8..=16 {
        let p = perfect_square_partition(k).unwrap();
        let report = verify(&p);
        assert!(report.is_perfect_mondrian(), "k = {k}");
        assert!(!is_proper(&p).0, "k = {k}");
        let dims = closed_form_dims(k).unwrap();
        for (r, (w, h)) in p.rects().iter().zip(&dims) {
            assert_eq!((&r.w, &r.h), (w, h), "k = {k}");
        }
        // The newest strip spans the square; from k = 9 the one before spans it the other way.
        let (wk, hk) = (&dims[k - 1].0, &dims[k - 1].1);
        let (wp, hp) = (&dims[k - 2].0, &dims[k - 2].1);
        let kk = k as i64;
        if k % 2 == 0 {
            assert_eq!((wk.as_rational(), hk.as_rational()), (Some(rat(1, 1)), Some(rat(1, kk))));
            if k >= 9 {
                assert_eq!((wp.as_rational(), hp.as_rational()), (Some(rat(1, kk - 1)), Some(rat(kk - 1, kk))));
            }
        } else {
            assert_eq!((wk.as_rational(), hk.as_rational()), (Some(rat(1, kk)), Some(rat(1, 1))));
            assert_eq!((wp.as_rational(), hp.as_rational()), (Some(rat(kk - 1, kk)), Some(rat(1, kk - 1))));
        }
    }
}

#[test]
fn eighth_rectangle_closed_form_at_ten() {
    // x'_8 = 8/9 and y'_8 = 9/(8·10) for k = 10.
    let dims = closed_form_dims(10).unwrap();
    assert_eq!(dims[7].0.as_rational(), Some(rat(8, 9)));
    assert_eq!(dims[7].1.as_rational(), Some(rat(9, 80)));
}

#[test]
fn extension_needs_seven_or_more() {
    assert_eq!(perfect_square_partition(6).unwrap_err(), MondrianError::UnsupportedK { k: 6, min: 7 });
    assert_eq!(closed_form_dims(7).unwrap_err(), MondrianError::UnsupportedK { k: 7, min: 8 });
    let p = solve_spiral(7).unwrap().partition;
    let one = FieldElement::one(p.base());
    let wide = rescale(&p, &one.scale(&rat(2, 1)), &one).unwrap();
    assert!(matches!(extend_once(&wide), Err(MondrianError::InvalidInput(_))));
}

#[test]
fn rescaling_to_a_threshold_is_rejected() {
    let p = solve_spiral(7).unwrap().partition;
    let one = FieldElement::one(p.base());
    let (x1, x2) = (&p.rects()[0].w, &p.rects()[1].w);
    let ratio = (x1 * x2).scale(&rat(7, 1));
    assert_eq!(rescale(&p, &one, &ratio), Err(MondrianError::CongruenceViolation { pairs: vec![(0, 1)] }));
    let ratios = excluded_ratios(&p);
    assert_eq!(ratios.len(), 21);
    assert!(ratios.iter().any(|((i, j), v)| (*i, *j) == (0, 1) && v == &ratio));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rescaling_off_threshold_recertifies(num in 1i64..400, den in 1i64..400) {
        let p = solve_spiral(7).unwrap().partition;
        let one = FieldElement::one(p.base());
        let aspect = FieldElement::from_rational(p.base(), BigRational::new(num.into(), den.into()));
        let plan = rescale_plan(&p, &one, &aspect).unwrap();
        // A few thresholds 7·x_i·x_j are rational, so some samples may collide; the plan
        // must predict exactly which.
        match rescale(&p, &one, &aspect) {
            Ok(q) => {
                prop_assert!(plan.violations.is_empty());
                prop_assert!(verify(&q).is_perfect_mondrian());
                prop_assert_eq!(q.height(), &aspect);
            }
            Err(MondrianError::CongruenceViolation { pairs }) => prop_assert_eq!(pairs, plan.violations),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
