//! Placed partitions with exact coordinates and the certifiers for tiling, equal area,
//! congruence, admissibility and properness.

pub mod ranked;

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{MondrianError, Result};
use crate::exactnum::{BigRational, FieldElement, RealAlgebraic};
pub use ranked::{RankRect, Witness};

/// An axis-parallel rectangle with lower-left corner `(x, y)` and sides `w × h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rect {
    pub x: FieldElement,
    pub y: FieldElement,
    pub w: FieldElement,
    pub h: FieldElement,
}

impl Rect {
    pub fn new(x: FieldElement, y: FieldElement, w: FieldElement, h: FieldElement) -> Self {
        Rect { x, y, w, h }
    }

    pub fn right(&self) -> FieldElement {
        &self.x + &self.w
    }

    pub fn top(&self) -> FieldElement {
        &self.y + &self.h
    }

    pub fn area(&self) -> FieldElement {
        &self.w * &self.h
    }

    pub fn perimeter(&self) -> FieldElement {
        let s = &self.w + &self.h;
        &s + &s
    }
}

/// A rectangle `[0, a] × [0, b]` cut into `k ≥ 2` rectangles of positive size, all over one
/// algebraic base. Tiling validity is certified separately by [`verify_tiling`].
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    a: FieldElement,
    b: FieldElement,
    rects: Vec<Rect>,
}

impl Partition {
    pub fn new(a: FieldElement, b: FieldElement, rects: Vec<Rect>) -> Result<Self> {
        if rects.len() < 2 {
            return Err(MondrianError::InvalidPartition(format!("k = {} < 2", rects.len())));
        }
        let base = Arc::clone(a.base());
        let b = b.rebased(&base)?;
        if !a.is_positive() || !b.is_positive() {
            return Err(MondrianError::InvalidPartition("outer rectangle must have positive sides".into()));
        }
        let mut out = Vec::with_capacity(rects.len());
        for (i, r) in rects.into_iter().enumerate() {
            let r = Rect::new(r.x.rebased(&base)?, r.y.rebased(&base)?, r.w.rebased(&base)?, r.h.rebased(&base)?);
            if !r.w.is_positive() || !r.h.is_positive() {
                return Err(MondrianError::InvalidPartition(format!("rectangle {} has a nonpositive side", i + 1)));
            }
            out.push(r);
        }
        Ok(Partition { a, b, rects: out })
    }

    pub fn k(&self) -> usize {
        self.rects.len()
    }

    pub fn width(&self) -> &FieldElement {
        &self.a
    }

    pub fn height(&self) -> &FieldElement {
        &self.b
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn base(&self) -> &Arc<RealAlgebraic> {
        self.a.base()
    }

    /// Rank form: the frame and each rectangle with coordinates replaced by ranks.
    pub fn ranked(&self) -> (RankRect, Vec<RankRect>) {
        let zero = FieldElement::zero(self.base());
        let mut xs = vec![zero.clone(), self.a.clone()];
        let mut ys = vec![zero, self.b.clone()];
        for r in &self.rects {
            xs.push(r.x.clone());
            xs.push(r.right());
            ys.push(r.y.clone());
            ys.push(r.top());
        }
        let (xr, yr) = (exact_ranks(&xs), exact_ranks(&ys));
        let frame = RankRect::new(xr[0], xr[1], yr[0], yr[1]);
        let rects = (0..self.rects.len())
            .map(|i| RankRect::new(xr[2 + 2 * i], xr[3 + 2 * i], yr[2 + 2 * i], yr[3 + 2 * i]))
            .collect();
        (frame, rects)
    }

    /// Same partition with every coordinate mapped through one of the eight symmetries of
    /// the frame: optional transpose, then optional horizontal and vertical flips.
    pub fn transformed(&self, transpose: bool, flip_x: bool, flip_y: bool) -> Partition {
        let (a, b) = if transpose { (self.b.clone(), self.a.clone()) } else { (self.a.clone(), self.b.clone()) };
        let rects = self
            .rects
            .iter()
            .map(|r| {
                let (mut x, mut y, w, h) = if transpose {
                    (r.y.clone(), r.x.clone(), r.h.clone(), r.w.clone())
                } else {
                    (r.x.clone(), r.y.clone(), r.w.clone(), r.h.clone())
                };
                if flip_x {
                    x = &(&a - &x) - &w;
                }
                if flip_y {
                    y = &(&b - &y) - &h;
                }
                Rect::new(x, y, w, h)
            })
            .collect();
        Partition { a, b, rects }
    }

    pub fn total_area(&self) -> FieldElement {
        let mut s = FieldElement::zero(self.base());
        for r in &self.rects {
            s = &s + &r.area();
        }
        s
    }

    /// Approximate `(x, y, w, h)` per rectangle.
    pub fn approx_rects(&self) -> Vec<[f64; 4]> {
        self.rects.iter().map(|r| [r.x.to_f64(), r.y.to_f64(), r.w.to_f64(), r.h.to_f64()]).collect()
    }
}

/// Outcome of the full certification of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub tiling_ok: bool,
    pub perfect: bool,
    pub mondrian: bool,
    pub admissible: bool,
    pub proper: bool,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    /// Perfect, Mondrian and a valid tiling.
    pub fn is_perfect_mondrian(&self) -> bool {
        self.tiling_ok && self.perfect && self.mondrian
    }
}

/// Exact tiling check by strip sweep; on failure returns a gap, overlap or bounds witness.
pub fn verify_tiling(p: &Partition) -> (bool, Option<Witness>) {
    let (frame, rects) = p.ranked();
    let w = ranked::tiling_witness(&rects, frame);
    (w.is_none(), w)
}

pub fn congruent(r1: &Rect, r2: &Rect) -> bool {
    (r1.w == r2.w && r1.h == r2.h) || (r1.w == r2.h && r1.h == r2.w)
}

/// Every rectangle has area exactly `a·b/k`.
pub fn is_perfect(p: &Partition) -> bool {
    area_mismatch(p).is_none()
}

fn area_mismatch(p: &Partition) -> Option<usize> {
    let target = (&p.a * &p.b).scale(&BigRational::new(1.into(), p.k().into()));
    p.rects.iter().position(|r| r.area() != target)
}

pub fn congruent_pairs(p: &Partition) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p.k() {
        for j in i + 1..p.k() {
            if congruent(&p.rects[i], &p.rects[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn is_mondrian(p: &Partition) -> bool {
    congruent_pairs(p).is_empty()
}

/// No two rectangles share an identical full side; otherwise returns one such pair.
pub fn is_admissible(p: &Partition) -> (bool, Option<(usize, usize)>) {
    let (_, rects) = p.ranked();
    let pairs = ranked::common_sides(&rects);
    (pairs.is_empty(), pairs.first().copied())
}

/// No proper subset of at least two rectangles tiles a rectangle; otherwise returns one such
/// subset. Meaningful only for valid tilings.
pub fn is_proper(p: &Partition) -> (bool, Option<Vec<usize>>) {
    let (frame, rects) = p.ranked();
    let sub = ranked::sub_rectangle(&rects, frame);
    (sub.is_none(), sub)
}

/// Largest area minus smallest area.
pub fn defect(p: &Partition) -> FieldElement {
    let areas: Vec<FieldElement> = p.rects.iter().map(Rect::area).collect();
    let max = areas.iter().max_by(|a, b| a.cmp_exact(b)).unwrap();
    let min = areas.iter().min_by(|a, b| a.cmp_exact(b)).unwrap();
    max - min
}

/// Largest rectangle perimeter and the first (0-based) index attaining it.
pub fn max_perimeter(p: &Partition) -> (FieldElement, usize) {
    let mut best = (p.rects[0].perimeter(), 0);
    for (i, r) in p.rects.iter().enumerate().skip(1) {
        let per = r.perimeter();
        if per.cmp_exact(&best.0).is_gt() {
            best = (per, i);
        }
    }
    best
}

/// Runs every certifier. Properness is only evaluated on valid tilings.
pub fn verify(p: &Partition) -> VerificationReport {
    let mut witnesses = Vec::new();
    let (frame, rects) = p.ranked();
    let tiling = ranked::tiling_witness(&rects, frame);
    let tiling_ok = tiling.is_none();
    witnesses.extend(tiling);

    let mismatch = area_mismatch(p);
    if let Some(rect) = mismatch {
        witnesses.push(Witness::AreaMismatch { rect });
    }
    let pairs = congruent_pairs(p);
    witnesses.extend(pairs.iter().map(|&(first, second)| Witness::Congruent { first, second }));
    let sides = ranked::common_sides(&rects);
    witnesses.extend(sides.iter().map(|&(first, second)| Witness::CommonSide { first, second }));
    let sub = if tiling_ok { ranked::sub_rectangle(&rects, frame) } else { None };
    if let Some(s) = &sub {
        witnesses.push(Witness::SubRectangle { rects: s.clone() });
    }
    VerificationReport {
        tiling_ok,
        perfect: mismatch.is_none(),
        mondrian: pairs.is_empty(),
        admissible: sides.is_empty(),
        proper: tiling_ok && sub.is_none(),
        witnesses,
    }
}

/// Builds a partition over a rational base from `(x, y, w, h)` rationals; for tests and
/// rational constructions.
pub fn rational_partition(a: BigRational, b: BigRational, rects: &[[BigRational; 4]]) -> Result<Partition> {
    let base = crate::exactnum::rational_base();
    let fe = |v: &BigRational| FieldElement::from_rational(&base, v.clone());
    Partition::new(
        fe(&a),
        fe(&b),
        rects.iter().map(|[x, y, w, h]| Rect::new(fe(x), fe(y), fe(w), fe(h))).collect(),
    )
}

/// Ranks of exact values. Disjoint `2^-64` enclosures settle most comparisons; only
/// overlapping ones (equal or extremely close values) fall back to an exact sign.
fn exact_ranks(values: &[FieldElement]) -> Vec<usize> {
    let boxes: Vec<(BigRational, BigRational)> = values.iter().map(|v| v.enclosure(64)).collect();
    let idx: Vec<usize> = (0..values.len()).collect();
    let (ranks, _) = ranked::rank_values(&idx, |&i, &j| {
        let (a, b) = (&boxes[i], &boxes[j]);
        if a.1 < b.0 {
            Ordering::Less
        } else if b.1 < a.0 {
            Ordering::Greater
        } else {
            values[i].cmp_exact(&values[j])
        }
    });
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn halves() -> Partition {
        rational_partition(
            rat(1, 1),
            rat(1, 1),
            &[[rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 2)], [rat(0, 1), rat(1, 2), rat(1, 1), rat(1, 2)]],
        )
        .unwrap()
    }

    #[test]
    fn unit_square_halves() {
        let p = halves();
        assert_eq!(verify_tiling(&p), (true, None));
        assert!(is_perfect(&p));
        assert_eq!(is_admissible(&p), (false, Some((0, 1))));
        let (per, i) = max_perimeter(&p);
        assert_eq!(per.as_rational(), Some(rat(3, 1)));
        assert_eq!(i, 0);
        assert!(defect(&p).is_zero());
    }

    #[test]
    fn overlapping_squares() {
        let one = rat(1, 1);
        let z = rat(0, 1);
        let p = rational_partition(
            one.clone(),
            one.clone(),
            &[[z.clone(), z.clone(), one.clone(), one.clone()], [z.clone(), z, one.clone(), one]],
        )
        .unwrap();
        let (ok, w) = verify_tiling(&p);
        assert!(!ok);
        assert!(matches!(w, Some(Witness::Overlap { .. })));
    }

    #[test]
    fn third_and_two_thirds() {
        let p = rational_partition(
            rat(1, 1),
            rat(1, 1),
            &[[rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 3)], [rat(0, 1), rat(1, 3), rat(1, 1), rat(2, 3)]],
        )
        .unwrap();
        assert!(!is_perfect(&p));
        assert_eq!(defect(&p).as_rational(), Some(rat(1, 3)));
    }

    #[test]
    fn rotation_congruence() {
        let base = crate::exactnum::rational_base();
        let f = |v| FieldElement::from_rational(&base, v);
        let a = Rect::new(f(rat(0, 1)), f(rat(0, 1)), f(rat(1, 2)), f(rat(1, 1)));
        let b = Rect::new(f(rat(0, 1)), f(rat(0, 1)), f(rat(1, 1)), f(rat(1, 2)));
        assert!(congruent(&a, &b));
    }

    #[test]
    fn four_squares_are_not_proper() {
        let h = rat(1, 2);
        let z = rat(0, 1);
        let p = rational_partition(
            rat(1, 1),
            rat(1, 1),
            &[
                [z.clone(), z.clone(), h.clone(), h.clone()],
                [h.clone(), z.clone(), h.clone(), h.clone()],
                [z.clone(), h.clone(), h.clone(), h.clone()],
                [h.clone(), h.clone(), h.clone(), h.clone()],
            ],
        )
        .unwrap();
        let r = verify(&p);
        assert!(r.tiling_ok && r.perfect && !r.mondrian && !r.proper && !r.admissible);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let z = rat(0, 1);
        let one = rat(1, 1);
        assert!(rational_partition(one.clone(), one.clone(), &[[z.clone(), z.clone(), one.clone(), one.clone()]]).is_err());
        assert!(rational_partition(
            one.clone(),
            one.clone(),
            &[[z.clone(), z.clone(), one.clone(), one.clone()], [z.clone(), z.clone(), one, z]]
        )
        .is_err());
    }

    #[test]
    fn symmetries_preserve_verification() {
        let p = halves();
        for t in [false, true] {
            for fx in [false, true] {
                for fy in [false, true] {
                    let q = p.transformed(t, fx, fy);
                    assert!(verify_tiling(&q).0);
                }
            }
        }
    }
}
