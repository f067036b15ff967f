//! Property bodies shared by the `properties` suite and the `acceptance` report.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use mondrian::exactnum::{
    field_reduce, isolate_roots, make_base, rat, rational_base, BigRational, FieldElement, IntPolynomial, RationalFunction,
    RealAlgebraic,
};
use mondrian::geometry::{congruent, rational_partition, verify_tiling, Rect};

pub type CaseResult = Result<(), TestCaseError>;

pub fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(coeffs)
}

pub fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
}

pub fn k7_base() -> Arc<RealAlgebraic> {
    make_base(&isolate_roots(&poly(&[3, -16, 15]))[1])
}

/// Guillotine cuts of the unit square at sixths of the cut piece, as `(x, y, w, h)`.
pub fn guillotine(cuts: &[(bool, u8, u8)]) -> Vec<[BigRational; 4]> {
    let mut rects = vec![[rat(0, 1), rat(1, 1), rat(0, 1), rat(1, 1)]];
    for &(vertical, pick, frac) in cuts {
        let i = pick as usize % rects.len();
        let t = rat(1 + frac as i64 % 5, 6);
        let [x0, x1, y0, y1] = rects[i].clone();
        if vertical {
            let m = &x0 + (&x1 - &x0) * &t;
            rects[i] = [x0, m.clone(), y0.clone(), y1.clone()];
            rects.push([m, x1, y0, y1]);
        } else {
            let m = &y0 + (&y1 - &y0) * &t;
            rects[i] = [x0.clone(), x1.clone(), y0, m.clone()];
            rects.push([x0, x1, m, y1]);
        }
    }
    rects.into_iter().map(|[x0, x1, y0, y1]| [x0.clone(), y0.clone(), x1 - x0, y1 - y0]).collect()
}

pub type SturmCase = (Vec<i64>, Vec<u32>);

pub fn sturm_cases() -> impl Strategy<Value = SturmCase> {
    (coeffs(7), prop::collection::vec(1u32..40, 1..6))
}

/// Every isolated root keeps exactly one sign change count through successive refinements.
pub fn sturm_count_stays_one((c, steps): SturmCase) -> CaseResult {
    let p = poly(&c);
    if p.degree().unwrap_or(0) < 1 {
        return Ok(());
    }
    for root in isolate_roots(&p) {
        prop_assert_eq!(root.sturm_count(), 1);
        let mut cur = root.clone();
        let mut bits = 0;
        for s in &steps {
            bits += s;
            cur = cur.refine_bits(bits);
            prop_assert_eq!(cur.sturm_count(), 1);
            prop_assert!(cur.same_root(&root));
        }
    }
    Ok(())
}

pub type RatFunCase = (Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>);

pub fn ratfun_cases() -> impl Strategy<Value = RatFunCase> {
    (coeffs(4), coeffs(3), coeffs(4), coeffs(3))
}

/// Reduction into the k = 7 field commutes with the four operations; inputs with a
/// vanishing denominator at the base are skipped.
pub fn field_reduction_is_a_homomorphism((n1, d1, n2, d2): RatFunCase) -> CaseResult {
    let (Some(f), Some(g)) = (RationalFunction::new(poly(&n1), poly(&d1)), RationalFunction::new(poly(&n2), poly(&d2)))
    else {
        return Ok(());
    };
    let base = k7_base();
    let (Ok(fz), Ok(gz)) = (field_reduce(&f, &base), field_reduce(&g, &base)) else { return Ok(()) };
    prop_assert_eq!(field_reduce(&(&f + &g), &base).unwrap(), &fz + &gz);
    prop_assert_eq!(field_reduce(&(&f - &g), &base).unwrap(), &fz - &gz);
    prop_assert_eq!(field_reduce(&(&f * &g), &base).unwrap(), &fz * &gz);
    if let Some(ginv) = g.recip() {
        if let Ok(q) = field_reduce(&(&f * &ginv), &base) {
            prop_assert_eq!(q, fz.checked_div(&gz).unwrap());
        }
    }
    let direct = f.eval_f64(base.to_f64());
    if direct.is_finite() && direct.abs() < 1e6 {
        prop_assert!((fz.to_f64() - direct).abs() <= 1e-6 * (1.0 + direct.abs()));
    }
    Ok(())
}

pub type TilingCase = (Vec<(bool, u8, u8)>, u8, usize, i64);

pub fn tiling_cases() -> impl Strategy<Value = TilingCase> {
    (prop::collection::vec((any::<bool>(), any::<u8>(), any::<u8>()), 1..8), any::<u8>(), 0usize..4, -3i64..=3)
}

/// A valid guillotine partition tiles; after nudging one coordinate the sweep verdict never
/// contradicts area summation.
pub fn tiling_sweep_agrees_with_area_sum((cuts, target, field, delta): TilingCase) -> CaseResult {
    let mut rects = guillotine(&cuts);
    let valid = rational_partition(rat(1, 1), rat(1, 1), &rects).unwrap();
    prop_assert!(verify_tiling(&valid).0);
    let i = target as usize % rects.len();
    rects[i][field] += rat(delta, 12);
    if !rects.iter().all(|r| r[2] > rat(0, 1) && r[3] > rat(0, 1)) {
        return Ok(());
    }
    let p = rational_partition(rat(1, 1), rat(1, 1), &rects).unwrap();
    let area_ok = p.total_area().as_rational() == Some(rat(1, 1));
    let (tiles, witness) = verify_tiling(&p);
    prop_assert_eq!(tiles, witness.is_none());
    prop_assert!(!tiles || area_ok);
    prop_assert!(tiles || delta != 0);
    Ok(())
}

pub type RectPairCase = ((i64, i64), (i64, i64), (i64, i64));

pub fn rect_pair_cases() -> impl Strategy<Value = RectPairCase> {
    ((1i64..20, 1i64..20), (1i64..20, 1i64..20), (0i64..10, 0i64..10))
}

pub fn congruence_is_symmetric_and_rotation_invariant((a, b, shift): RectPairCase) -> CaseResult {
    let base = rational_base();
    let fe = |v: i64| FieldElement::from_rational(&base, rat(v, 7));
    let r1 = Rect::new(fe(0), fe(0), fe(a.0), fe(a.1));
    let r2 = Rect::new(fe(shift.0), fe(shift.1), fe(b.0), fe(b.1));
    let r2_rot = Rect::new(fe(shift.1), fe(shift.0), fe(b.1), fe(b.0));
    prop_assert_eq!(congruent(&r1, &r2), congruent(&r2, &r1));
    prop_assert_eq!(congruent(&r1, &r2), congruent(&r1, &r2_rot));
    prop_assert_eq!(congruent(&r1, &r2), (a == b) || (a.0 == b.1 && a.1 == b.0));
    prop_assert!(congruent(&r1, &r1));
    Ok(())
}
