//! The spiral construction: rectangles placed clockwise from the top-left corner, each side
//! forced by equal area and the sides already placed, closed by one polynomial in the first
//! width `x`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{MondrianError, Result};
use crate::exactnum::{field_reduce, isolate_roots, make_base, FieldElement, IntPolynomial, RationalFunction, RealAlgebraic};
use crate::geometry::{verify, Partition, Rect, VerificationReport};

/// The side expressions `(x_i, y_i)` of rectangles `1..k-1` as functions of `x = x_1`.
#[derive(Clone, Debug)]
pub struct SpiralSystem {
    pub k: usize,
    pub steps: Vec<(RationalFunction, RationalFunction)>,
}

fn check_k(k: usize) -> Result<()> {
    if k < 5 {
        return Err(MondrianError::UnsupportedK { k, min: 5 });
    }
    Ok(())
}

pub fn spiral_system(k: usize) -> Result<SpiralSystem> {
    check_k(k)?;
    let one = RationalFunction::one();
    let kk = RationalFunction::from_int(k as i64);
    let inv_k = |v: &RationalFunction| &one / &(&kk * v);
    let mut xs: Vec<RationalFunction> = vec![RationalFunction::zero()];
    let mut ys: Vec<RationalFunction> = vec![RationalFunction::zero()];
    xs.push(RationalFunction::x());
    ys.push(inv_k(&xs[1]));
    for s in 2..k {
        if s % 2 == 0 {
            let n = s / 2;
            let mut x = &one - &xs[s - 1];
            for i in 1..=n.saturating_sub(2) {
                x = &x - &xs[2 * i];
            }
            ys.push(inv_k(&x));
            xs.push(x);
        } else {
            let n = (s - 1) / 2;
            let mut y = &one - &ys[s - 1];
            for i in 1..n {
                y = &y - &ys[2 * i - 1];
            }
            xs.push(inv_k(&y));
            ys.push(y);
        }
    }
    let steps = xs.into_iter().zip(ys).skip(1).collect();
    Ok(SpiralSystem { k, steps })
}

/// Sides of the closing rectangle `R_{k-1}` as the layout forces them: one side from the
/// recurrence and the other spanning to the facing side of `R_{k-3}`.
fn closing_sides(sys: &SpiralSystem) -> (RationalFunction, RationalFunction) {
    let k = sys.k;
    let one = RationalFunction::one();
    let s = k - 1;
    let (xs, ys): (Vec<_>, Vec<_>) = sys.steps.iter().cloned().unzip();
    let x = |i: usize| &xs[i - 1];
    let y = |i: usize| &ys[i - 1];
    if k % 2 == 1 {
        // s = 2n even: the height reaches down to the bottom of R_{2n-3}.
        let n = s / 2;
        let mut h = one.clone();
        for i in 1..n {
            h = &h - y(2 * i - 1);
        }
        (x(s).clone(), h)
    } else {
        // s = 2n+1 odd: the width reaches across to R_{2n-2}.
        let n = (s - 1) / 2;
        let mut w = one.clone();
        for i in 1..n {
            w = &w - x(2 * i);
        }
        (w, y(s).clone())
    }
}

pub fn closure_polynomial(k: usize) -> Result<IntPolynomial> {
    let sys = spiral_system(k)?;
    let (w, h) = closing_sides(&sys);
    let residual = &(&w * &h) - &RationalFunction::constant(&crate::exactnum::rat(1, k as i64));
    Ok(residual.primitive_numerator())
}

/// A certified spiral partition together with the root it was built from.
#[derive(Clone, Debug)]
pub struct SpiralSolution {
    pub k: usize,
    pub root: RealAlgebraic,
    pub partition: Partition,
    pub report: VerificationReport,
    /// Roots tried before this one, with the reason each was rejected.
    pub rejected: Vec<RootRejection>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootRejection {
    pub approx: f64,
    pub reason: Rejection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    DenominatorVanishes,
    /// Side names such as `x7` that are not strictly positive.
    NonPositive(Vec<String>),
    /// Side names such as `y3` that are not below 1.
    TooLong(Vec<String>),
    InvalidTiling,
    NotPerfect,
}

/// Exact placement of all `k` rectangles for one root, before any validity decision.
#[derive(Clone, Debug)]
pub struct SpiralPlacement {
    /// `(left, bottom, right, top)` per rectangle, in spiral order.
    pub edges: Vec<[FieldElement; 4]>,
}

impl SpiralPlacement {
    pub fn width(&self, i: usize) -> FieldElement {
        &self.edges[i][2] - &self.edges[i][0]
    }
    pub fn height(&self, i: usize) -> FieldElement {
        &self.edges[i][3] - &self.edges[i][1]
    }
}

const LEFT: usize = 0;
const BOTTOM: usize = 1;
const RIGHT: usize = 2;
const TOP: usize = 3;

/// Places rectangles `1..k-1` with the given sizes and fills the remaining hole with `R_k`.
pub fn place(sizes: &[(FieldElement, FieldElement)], base: &Arc<RealAlgebraic>) -> SpiralPlacement {
    let k = sizes.len() + 1;
    let zero = FieldElement::zero(base);
    let one = FieldElement::one(base);
    // Frame sides seen as the rectangles preceding R_1.
    let virt = |j: i64, side: usize| -> FieldElement {
        match (j, side) {
            (-4, RIGHT) | (0, RIGHT) => zero.clone(),
            (-3, BOTTOM) => one.clone(),
            (-2, LEFT) => one.clone(),
            (-1, TOP) => zero.clone(),
            _ => unreachable!("frame side {side} of virtual rectangle {j}"),
        }
    };
    let mut edges: Vec<[FieldElement; 4]> = Vec::with_capacity(k);
    let edge = |edges: &Vec<[FieldElement; 4]>, j: i64, side: usize| -> FieldElement {
        if j >= 1 {
            edges[(j - 1) as usize][side].clone()
        } else {
            virt(j, side)
        }
    };
    for (idx, (w, h)) in sizes.iter().enumerate() {
        let i = idx as i64 + 1;
        let e = match i % 4 {
            1 => {
                let l = edge(&edges, i - 5, RIGHT);
                let t = edge(&edges, i - 4, BOTTOM);
                [l.clone(), &t - h, &l + w, t]
            }
            2 => {
                let t = edge(&edges, i - 5, BOTTOM);
                let r = edge(&edges, i - 4, LEFT);
                [&r - w, &t - h, r, t]
            }
            3 => {
                let r = edge(&edges, i - 5, LEFT);
                let b = edge(&edges, i - 4, TOP);
                [&r - w, b.clone(), r, &b + h]
            }
            _ => {
                let b = edge(&edges, i - 5, TOP);
                let l = edge(&edges, i - 4, RIGHT);
                [l.clone(), b.clone(), &l + w, &b + h]
            }
        };
        edges.push(e);
    }
    // The hole left by the last four rectangles; each contributes the side facing inward.
    let mut hole = [zero.clone(), zero.clone(), zero.clone(), zero];
    for j in (k - 4)..k {
        let e = &edges[j - 1];
        match j % 4 {
            1 => hole[TOP] = e[BOTTOM].clone(),
            2 => hole[RIGHT] = e[LEFT].clone(),
            3 => hole[BOTTOM] = e[TOP].clone(),
            _ => hole[LEFT] = e[RIGHT].clone(),
        }
    }
    edges.push(hole);
    SpiralPlacement { edges }
}

/// Instantiates the spiral at one root and certifies it.
pub fn instantiate(sys: &SpiralSystem, root: &RealAlgebraic) -> std::result::Result<(Partition, VerificationReport), Rejection> {
    let base = make_base(root);
    let k = sys.k;
    let reduce = |r: &RationalFunction| field_reduce(r, &base).map_err(|_| Rejection::DenominatorVanishes);
    let mut sizes = Vec::with_capacity(k - 1);
    for (x, y) in &sys.steps[..k - 2] {
        sizes.push((reduce(x)?, reduce(y)?));
    }
    let (cw, ch) = closing_sides(sys);
    sizes.push((reduce(&cw)?, reduce(&ch)?));

    let placement = place(&sizes, &base);
    let one = FieldElement::one(&base);
    let mut nonpos = Vec::new();
    let mut long = Vec::new();
    for i in 0..k {
        for (name, v) in [("x", placement.width(i)), ("y", placement.height(i))] {
            if !v.is_positive() {
                nonpos.push(format!("{name}{}", i + 1));
            } else if v.cmp_exact(&one).is_ge() {
                long.push(format!("{name}{}", i + 1));
            }
        }
    }
    if !nonpos.is_empty() {
        return Err(Rejection::NonPositive(nonpos));
    }
    if !long.is_empty() {
        return Err(Rejection::TooLong(long));
    }
    let rects = (0..k)
        .map(|i| Rect::new(placement.edges[i][LEFT].clone(), placement.edges[i][BOTTOM].clone(), placement.width(i), placement.height(i)))
        .collect();
    let p = Partition::new(one.clone(), one, rects).map_err(|_| Rejection::InvalidTiling)?;
    let report = verify(&p);
    if !report.tiling_ok {
        return Err(Rejection::InvalidTiling);
    }
    if !report.perfect {
        return Err(Rejection::NotPerfect);
    }
    Ok((p, report))
}

/// Tries the roots of the closure polynomial from the largest down and returns the first
/// one giving a certified perfect partition.
pub fn solve_spiral(k: usize) -> Result<SpiralSolution> {
    let sys = spiral_system(k)?;
    let poly = closure_polynomial(k)?;
    let mut rejected = Vec::new();
    for root in isolate_roots(&poly).into_iter().rev() {
        match instantiate(&sys, &root) {
            Ok((partition, report)) => {
                return Ok(SpiralSolution { k, root, partition, report, rejected });
            }
            Err(reason) => {
                log::debug!("k={k}: root {:.10} rejected: {reason:?}", root.to_f64());
                rejected.push(RootRejection { approx: root.to_f64(), reason });
            }
        }
    }
    Err(MondrianError::NoValidRoot { k })
}

/// Evidence for one `k` of the conjecture scan.
#[derive(Clone, Debug)]
pub struct ConjectureEntry {
    pub k: usize,
    pub polynomial: IntPolynomial,
    pub x1: Option<f64>,
    /// A valid spiral partition exists and is Mondrian, admissible and proper.
    pub proper_perfect_mondrian: bool,
    pub note: String,
}

pub fn conjecture_scan(k_max: usize) -> Result<Vec<ConjectureEntry>> {
    if k_max < 7 {
        return Err(MondrianError::InvalidInput(format!("k_max = {k_max} must be at least 7")));
    }
    Ok((7..=k_max).into_par_iter().map(scan_one).collect())
}

fn scan_one(k: usize) -> ConjectureEntry {
    let polynomial = closure_polynomial(k).expect("k >= 7");
    match solve_spiral(k) {
        Ok(sol) => {
            let r = &sol.report;
            let ok = r.is_perfect_mondrian() && r.admissible && r.proper;
            let note = if ok { "certified".to_string() } else { format!("classification {r:?}") };
            ConjectureEntry { k, polynomial, x1: Some(sol.root.to_f64()), proper_perfect_mondrian: ok, note }
        }
        Err(e) => ConjectureEntry { k, polynomial, x1: None, proper_perfect_mondrian: false, note: e.to_string() },
    }
}

/// Largest real root of the closure polynomial.
pub fn largest_root(k: usize) -> Result<Option<RealAlgebraic>> {
    Ok(isolate_roots(&closure_polynomial(k)?).pop())
}
