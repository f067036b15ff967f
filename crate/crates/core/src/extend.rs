//! Rescaling perfect Mondrian partitions to other rectangles, and the strip extension that
//! grows a perfect Mondrian partition of the square by one rectangle at a time.

use crate::error::{MondrianError, Result};
use crate::exactnum::{BigRational, FieldElement};
use crate::geometry::{congruent_pairs, verify, Partition, Rect};
use crate::spiral::solve_spiral;

/// A rescaling from `a × b` to `a′ × b′` and the pairs it would make congruent.
#[derive(Clone, Debug, PartialEq)]
pub struct RescalePlan {
    pub source: (FieldElement, FieldElement),
    pub target: (FieldElement, FieldElement),
    /// `a′/a`, applied to horizontal sides.
    pub horizontal: FieldElement,
    /// `b′/b`, applied to vertical sides.
    pub vertical: FieldElement,
    /// Pairs `(i, j)`, `i < j`, with `x_i·x_j = (a²/k)(b′/a′)`.
    pub violations: Vec<(usize, usize)>,
}

/// Rescaling `R_i ↦ R'_i` keeps `x'_i ≠ x'_j` automatically for a perfect Mondrian source;
/// `x'_i = y'_j` happens exactly when `x_i·x_j = (a²/k)(b′/a′)`.
pub fn rescale_plan(p: &Partition, a2: &FieldElement, b2: &FieldElement) -> Result<RescalePlan> {
    let base = p.base();
    let a2 = a2.rebased(base)?;
    let b2 = b2.rebased(base)?;
    if !a2.is_positive() || !b2.is_positive() {
        return Err(MondrianError::InvalidInput("target sides must be positive".into()));
    }
    let (a, b) = (p.width().clone(), p.height().clone());
    let horizontal = a2.checked_div(&a)?;
    let vertical = b2.checked_div(&b)?;
    let k = BigRational::from_integer((p.k() as i64).into());
    let threshold = &(&a * &a).scale(&k.recip()) * &b2.checked_div(&a2)?;
    let xs: Vec<&FieldElement> = p.rects().iter().map(|r| &r.w).collect();
    let mut violations = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] * xs[j] == threshold {
                violations.push((i, j));
            }
        }
    }
    Ok(RescalePlan { source: (a, b), target: (a2, b2), horizontal, vertical, violations })
}

/// The rescaled partition of `a′ × b′`, certified perfect Mondrian.
pub fn rescale(p: &Partition, a2: &FieldElement, b2: &FieldElement) -> Result<Partition> {
    let plan = rescale_plan(p, a2, b2)?;
    if !plan.violations.is_empty() {
        return Err(MondrianError::CongruenceViolation { pairs: plan.violations });
    }
    let rects = p
        .rects()
        .iter()
        .map(|r| Rect::new(&r.x * &plan.horizontal, &r.y * &plan.vertical, &r.w * &plan.horizontal, &r.h * &plan.vertical))
        .collect();
    let out = Partition::new(plan.target.0, plan.target.1, rects)?;
    certify(&out, |pairs| MondrianError::CongruenceViolation { pairs })?;
    Ok(out)
}

/// Aspect ratios `b′/a′` excluded by the rescaling condition: `k·x_i·x_j/a²` for every pair
/// `i < j`, sorted by value.
pub fn excluded_ratios(p: &Partition) -> Vec<((usize, usize), FieldElement)> {
    let a = p.width();
    let k = BigRational::from_integer((p.k() as i64).into());
    let a_sq = a * a;
    let mut out = Vec::new();
    for i in 0..p.k() {
        for j in i + 1..p.k() {
            let prod = (&p.rects()[i].w * &p.rects()[j].w).scale(&k);
            out.push(((i, j), prod.checked_div(&a_sq).expect("positive width")));
        }
    }
    out.sort_by(|x, y| x.1.cmp_exact(&y.1));
    out
}

fn certify(p: &Partition, err: impl Fn(Vec<(usize, usize)>) -> MondrianError) -> Result<()> {
    let report = verify(p);
    if !report.tiling_ok || !report.perfect {
        return Err(MondrianError::CertificationFailure(format!("{:?}", report.witnesses)));
    }
    if !report.mondrian {
        return Err(err(congruent_pairs(p)));
    }
    Ok(())
}

/// Adds one rectangle to a perfect Mondrian partition of the unit square with `k`
/// rectangles. An even target `k + 1` gets a bottom strip `1 × 1/k` and vertical sides scaled
/// by `k/(k+1)`; an odd target gets a left strip `1/k × 1` and horizontal sides scaled by
/// `k/(k+1)`. The new rectangle is appended last; the result is re-certified.
pub fn extend_once(p: &Partition) -> Result<Partition> {
    let base = p.base().clone();
    let one = FieldElement::one(&base);
    if p.width() != &one || p.height() != &one {
        return Err(MondrianError::InvalidInput("extension starts from the unit square".into()));
    }
    let k = p.k() as i64;
    let shrink = BigRational::new(k.into(), (k + 1).into());
    let strip = FieldElement::from_rational(&base, BigRational::new(1.into(), (k + 1).into()));
    let zero = FieldElement::zero(&base);
    let mut rects: Vec<Rect> = if (k + 1) % 2 == 0 {
        p.rects()
            .iter()
            .map(|r| Rect::new(r.x.clone(), &r.y.scale(&shrink) + &strip, r.w.clone(), r.h.scale(&shrink)))
            .collect()
    } else {
        p.rects()
            .iter()
            .map(|r| Rect::new(&r.x.scale(&shrink) + &strip, r.y.clone(), r.w.scale(&shrink), r.h.clone()))
            .collect()
    };
    rects.push(if (k + 1) % 2 == 0 {
        Rect::new(zero.clone(), zero, one.clone(), strip)
    } else {
        Rect::new(zero.clone(), zero, strip, one.clone())
    });
    let out = Partition::new(one.clone(), one, rects)?;
    certify(&out, |pairs| MondrianError::CongruentPairAfterExtension { pairs })?;
    Ok(out)
}

/// Perfect Mondrian partition of the unit square: the seven-rectangle spiral for `k = 7`,
/// extended strip by strip beyond.
pub fn perfect_square_partition(k: usize) -> Result<Partition> {
    if k < 7 {
        return Err(MondrianError::UnsupportedK { k, min: 7 });
    }
    let mut p = solve_spiral(7)?.partition;
    for _ in 7..k {
        p = extend_once(&p)?;
    }
    Ok(p)
}

/// Product `lo · (lo+2) · (lo+4) ⋯` over terms not exceeding `hi`; empty products are 1.
fn step2_product(lo: i64, hi: i64) -> BigRational {
    let mut acc = BigRational::from_integer(1.into());
    let mut t = lo;
    while t <= hi {
        acc *= BigRational::from_integer(t.into());
        t += 2;
    }
    acc
}

/// Closed-form sides `(w, h)` of every rectangle of [`perfect_square_partition`]`(k)`, in the
/// same order: the first seven scale the spiral's sides, the rest are rational.
pub fn closed_form_dims(k: usize) -> Result<Vec<(FieldElement, FieldElement)>> {
    if k < 8 {
        return Err(MondrianError::UnsupportedK { k, min: 8 });
    }
    let base_partition = solve_spiral(7)?.partition;
    let base = base_partition.base().clone();
    let k = k as i64;
    let p = step2_product;
    let (sx, sy, x8, y8) = if k % 2 == 0 {
        (
            p(8, k - 2) / p(9, k - 1),
            p(7, k - 1) / p(8, k),
            p(8, k - 2) / p(9, k - 1),
            p(9, k - 1) / p(8, k),
        )
    } else {
        (
            p(8, k - 1) / p(9, k),
            p(7, k - 2) / p(8, k - 1),
            p(8, k - 1) / p(9, k),
            p(9, k - 2) / p(8, k - 1),
        )
    };
    let mut dims: Vec<(FieldElement, FieldElement)> =
        base_partition.rects().iter().map(|r| (r.w.scale(&sx), r.h.scale(&sy))).collect();
    let (mut x, mut y) = (x8, y8);
    dims.push((FieldElement::from_rational(&base, x.clone()), FieldElement::from_rational(&base, y.clone())));
    for i in 9..=k {
        let f = BigRational::from_integer((i - 1).into());
        if i % 2 == 0 {
            x *= &f;
            y /= &f;
        } else {
            x /= &f;
            y *= &f;
        }
        dims.push((FieldElement::from_rational(&base, x.clone()), FieldElement::from_rational(&base, y.clone())));
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::geometry::is_proper;

    #[test]
    fn step2_products() {
        assert_eq!(step2_product(8, 6), rat(1, 1));
        assert_eq!(step2_product(8, 12), rat(960, 1));
        assert_eq!(step2_product(9, 11), rat(99, 1));
    }

    #[test]
    fn first_extension_adds_bottom_strip() {
        let p7 = perfect_square_partition(7).unwrap();
        let p8 = extend_once(&p7).unwrap();
        let last = p8.rects().last().unwrap();
        assert_eq!(last.w.as_rational(), Some(rat(1, 1)));
        assert_eq!(last.h.as_rational(), Some(rat(1, 8)));
        assert_eq!(p8.rects()[0].h, p7.rects()[0].h.scale(&rat(7, 8)));
        assert!(!is_proper(&p8).0);
        let p9 = extend_once(&p8).unwrap();
        let last = p9.rects().last().unwrap();
        assert_eq!((last.w.as_rational(), last.h.as_rational()), (Some(rat(1, 9)), Some(rat(1, 1))));
    }

    #[test]
    fn identity_rescale() {
        let p = perfect_square_partition(7).unwrap();
        let one = FieldElement::one(p.base());
        assert_eq!(rescale(&p, &one, &one).unwrap(), p);
    }

    #[test]
    fn closed_forms_match_iteration() {
        for k in 8..=11 {
            let p = perfect_square_partition(k).unwrap();
            let dims = closed_form_dims(k).unwrap();
            for (r, (w, h)) in p.rects().iter().zip(&dims) {
                assert_eq!((&r.w, &r.h), (w, h), "k = {k}");
            }
        }
    }
}
