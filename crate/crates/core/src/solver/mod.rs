//! Equal-area systems of generic rectangulations of the unit square, their exact reduction to
//! one variable where forward substitution allows it, and a certified multistart Newton
//! fallback.

mod census;
mod newton;

use std::sync::Arc;

use log::debug;

use crate::error::{MondrianError, Result};
use crate::exactnum::{
    field_reduce, isolate_roots, make_base, rat, rational_base, BigRational, FieldElement, IntPolynomial, QPoly,
    RationalFunction, RealAlgebraic,
};
use crate::geometry::{verify, Partition, Rect};
use crate::layouts::Layout;

pub use census::{census, census_with_bound, CensusRow, Certification, SolutionCensus, DEFAULT_CENSUS_MAX_K};
pub use newton::{newton_solutions, NewtonConfig, NumericSolution};

/// Sides shorter than this make a solution degenerate: the layout collapses to fewer rectangles.
pub const DEGENERATE_SIDE: f64 = 1e-10;

/// A segment coordinate: fixed on the outer boundary or one of the unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Fixed(i64),
    Var(usize),
}

/// Outcome of forward substitution.
#[derive(Clone, Debug, PartialEq)]
pub enum Closure {
    /// Every unknown is a constant and all equations hold.
    Determined,
    /// The equations contradict each other.
    Inconsistent,
    /// Solutions are the real roots of this primitive polynomial in the free variable.
    Polynomial(IntPolynomial),
    /// Every value of the free variable satisfies the equations.
    Family,
}

/// All unknowns as rational functions of at most one free unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub free: Option<usize>,
    pub values: Vec<RationalFunction>,
    pub closure: Closure,
}

/// Rectangle `i` spans `[x(left), x(right)] × [y(bottom), y(top)]` and must have area `1/k`.
#[derive(Clone, Debug)]
pub struct EqualAreaSystem {
    layout: Layout,
    k: usize,
    /// Per vertical segment.
    xs: Vec<Coord>,
    /// Per horizontal segment.
    ys: Vec<Coord>,
    unknowns: usize,
    /// Unknown index to `(is_vertical_segment, segment id)`.
    owners: Vec<(bool, usize)>,
    reduction: Option<Reduction>,
}

/// The four coordinates of one rectangle: left, right, bottom, top.
type Frame = [Coord; 4];

impl EqualAreaSystem {
    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.k
    }

    pub fn reduction(&self) -> Option<&Reduction> {
        self.reduction.as_ref()
    }

    /// Whether unknown `v` is an x-coordinate, and the segment it belongs to.
    pub fn owner(&self, v: usize) -> (bool, usize) {
        self.owners[v]
    }

    pub(crate) fn frames(&self) -> Vec<Frame> {
        self.layout
            .sides()
            .iter()
            .map(|s| [self.xs[s.left], self.xs[s.right], self.ys[s.bottom], self.ys[s.top]])
            .collect()
    }

    /// Residuals `w·h − 1/k` at a point, in rectangle order.
    pub fn residuals(&self, point: &[f64]) -> Vec<f64> {
        let val = |c: Coord| match c {
            Coord::Fixed(v) => v as f64,
            Coord::Var(i) => point[i],
        };
        let target = 1.0 / self.k as f64;
        self.frames().iter().map(|f| (val(f[1]) - val(f[0])) * (val(f[3]) - val(f[2])) - target).collect()
    }

    /// Coordinates of the layout's rank grid scaled to the unit square: a point in the
    /// right chamber, used to seed numeric solving.
    pub fn rank_point(&self) -> Vec<f64> {
        let (w, h) = (self.layout.width() as f64, self.layout.height() as f64);
        self.owners
            .iter()
            .map(|&(vertical, s)| {
                if vertical {
                    self.layout.vsegs()[s].coord as f64 / w
                } else {
                    self.layout.hsegs()[s].coord as f64 / h
                }
            })
            .collect()
    }
}

/// Sets up unknowns for every internal maximal segment and attempts forward substitution.
pub fn build_system(layout: &Layout, k: usize) -> Result<EqualAreaSystem> {
    if layout.k() != k {
        return Err(MondrianError::InvalidInput(format!("layout has {} rectangles, not {k}", layout.k())));
    }
    if k < 2 {
        return Err(MondrianError::UnsupportedK { k, min: 2 });
    }
    let mut owners = Vec::new();
    let mut coords = |segs: &[crate::layouts::Segment], extent: usize, vertical: bool| -> Vec<Coord> {
        segs.iter()
            .enumerate()
            .map(|(id, s)| {
                if s.coord == 0 {
                    Coord::Fixed(0)
                } else if s.coord == extent {
                    Coord::Fixed(1)
                } else {
                    owners.push((vertical, id));
                    Coord::Var(owners.len() - 1)
                }
            })
            .collect()
    };
    let xs = coords(layout.vsegs(), layout.width(), true);
    let ys = coords(layout.hsegs(), layout.height(), false);
    let unknowns = owners.len();
    let mut sys = EqualAreaSystem { layout: layout.clone(), k, xs, ys, unknowns, owners, reduction: None };
    sys.reduction = reduce(&sys);
    Ok(sys)
}

fn reduce(sys: &EqualAreaSystem) -> Option<Reduction> {
    if let Some(r) = propagate(sys, None) {
        return Some(r);
    }
    for v in free_variable_order(sys) {
        if let Some(r) = propagate(sys, Some(v)) {
            return Some(r);
        }
    }
    None
}

/// The right side of the top-left rectangle first, then every other unknown.
fn free_variable_order(sys: &EqualAreaSystem) -> Vec<usize> {
    let tl = sys.layout.top_left();
    let mut order = Vec::with_capacity(sys.unknowns);
    if let Coord::Var(v) = sys.xs[sys.layout.sides()[tl].right] {
        order.push(v);
    }
    let first = order.first().copied();
    order.extend((0..sys.unknowns).filter(|&v| Some(v) != first));
    order
}

/// Forward substitution: a rectangle with three known sides determines the fourth.
fn propagate(sys: &EqualAreaSystem, free: Option<usize>) -> Option<Reduction> {
    let mut values: Vec<Option<RationalFunction>> = vec![None; sys.unknowns];
    if let Some(v) = free {
        values[v] = Some(RationalFunction::x());
    }
    let target = RationalFunction::constant(&rat(1, sys.k as i64));
    let frames = sys.frames();
    let get = |values: &[Option<RationalFunction>], c: Coord| -> Option<RationalFunction> {
        match c {
            Coord::Fixed(v) => Some(RationalFunction::from_int(v)),
            Coord::Var(i) => values[i].clone(),
        }
    };
    let mut progress = true;
    while progress {
        progress = false;
        for f in &frames {
            let known: Vec<Option<RationalFunction>> = f.iter().map(|&c| get(&values, c)).collect();
            let missing: Vec<usize> = (0..4).filter(|&i| known[i].is_none()).collect();
            if missing.len() != 1 {
                continue;
            }
            let m = missing[0];
            // Partner of side m along the same axis, and the two sides of the other axis.
            let (partner, o0, o1) = match m {
                0 => (1, 2, 3),
                1 => (0, 2, 3),
                2 => (3, 0, 1),
                _ => (2, 0, 1),
            };
            let across = known[o1].as_ref().unwrap() - known[o0].as_ref().unwrap();
            if across.is_zero() {
                return None;
            }
            let len = &target / &across;
            let p = known[partner].as_ref().unwrap();
            let value = if m.is_multiple_of(2) { p - &len } else { p + &len };
            if let Coord::Var(i) = f[m] {
                values[i] = Some(value);
                progress = true;
            }
        }
    }
    let values: Vec<RationalFunction> = values.into_iter().collect::<Option<_>>()?;
    let point = |c: Coord| match c {
        Coord::Fixed(v) => RationalFunction::from_int(v),
        Coord::Var(i) => values[i].clone(),
    };
    let mut gcd = QPoly::zero();
    let mut constant_mismatch = false;
    for f in &frames {
        let area = &(&point(f[1]) - &point(f[0])) * &(&point(f[3]) - &point(f[2]));
        let residual = &area - &target;
        if residual.is_zero() {
            continue;
        }
        if residual.as_constant().is_some() {
            constant_mismatch = true;
        }
        gcd = gcd.gcd(&residual.numerator().to_qpoly());
    }
    let closure = if constant_mismatch {
        Closure::Inconsistent
    } else if gcd.is_zero() {
        if free.is_some() {
            Closure::Family
        } else {
            Closure::Determined
        }
    } else if gcd.degree() == Some(0) {
        Closure::Inconsistent
    } else {
        Closure::Polynomial(gcd.to_primitive().1)
    };
    Some(Reduction { free, values, closure })
}

/// Why a candidate solution was discarded.
#[derive(Clone, Debug, PartialEq)]
pub enum Discard {
    DenominatorVanishes,
    /// Some rectangle side is below [`DEGENERATE_SIDE`] or negative.
    Degenerate { rect: usize },
    InvalidTiling,
    NotPerfect,
}

/// Candidate from the exact pipeline that did not become a solution.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscardedRoot {
    pub approx: f64,
    pub reason: Discard,
}

/// Result of solving one system.
#[derive(Clone, Debug, Default)]
pub struct SystemSolutions {
    /// Certified solutions, one per symmetry class.
    pub partitions: Vec<Partition>,
    pub discarded: Vec<DiscardedRoot>,
    /// Numeric solutions whose residuals were certified on a tiny box but that have no exact
    /// form yet.
    pub numeric: Vec<NumericSolution>,
    /// Numeric candidates that could be neither certified nor refuted.
    pub unresolved: Vec<NumericSolution>,
    /// True when some free parameter stayed unconstrained.
    pub family: bool,
}

/// Solves exactly when a reduction exists, numerically otherwise.
pub fn solve_system(sys: &EqualAreaSystem) -> SystemSolutions {
    let mut out = SystemSolutions::default();
    match sys.reduction() {
        Some(red) => solve_reduced(sys, red, &mut out),
        None => {
            let cfg = NewtonConfig::default();
            for sol in newton_solutions(sys, &cfg) {
                if sol.certified {
                    out.numeric.push(sol);
                } else {
                    out.unresolved.push(sol);
                }
            }
        }
    }
    out.partitions = dedupe(std::mem::take(&mut out.partitions));
    out
}

fn solve_reduced(sys: &EqualAreaSystem, red: &Reduction, out: &mut SystemSolutions) {
    match &red.closure {
        Closure::Inconsistent => {}
        Closure::Family => out.family = true,
        Closure::Determined => {
            let base = rational_base();
            let root = RealAlgebraic::rational(&BigRational::from_integer(0.into()));
            push_instance(sys, red, &base, &root, out);
        }
        Closure::Polynomial(p) => {
            for root in isolate_roots(p) {
                let base = make_base(&root);
                push_instance(sys, red, &base, &root, out);
            }
        }
    }
}

fn push_instance(sys: &EqualAreaSystem, red: &Reduction, base: &Arc<RealAlgebraic>, root: &RealAlgebraic, out: &mut SystemSolutions) {
    match instantiate(sys, red, base) {
        Ok(p) => out.partitions.push(p),
        Err(reason) => {
            debug!("discarding root {:.12} of a k={} system: {reason:?}", root.to_f64(), sys.k);
            out.discarded.push(DiscardedRoot { approx: root.to_f64(), reason });
        }
    }
}

/// Evaluates the reduction at the base's root and certifies the resulting partition.
fn instantiate(sys: &EqualAreaSystem, red: &Reduction, base: &Arc<RealAlgebraic>) -> std::result::Result<Partition, Discard> {
    let values: Vec<FieldElement> = red
        .values
        .iter()
        .map(|v| field_reduce(v, base))
        .collect::<Result<_>>()
        .map_err(|_| Discard::DenominatorVanishes)?;
    let coord = |c: Coord| match c {
        Coord::Fixed(v) => FieldElement::from_int(base, v),
        Coord::Var(i) => values[i].clone(),
    };
    let threshold = FieldElement::from_rational(base, BigRational::new(1.into(), 10_000_000_000i64.into()));
    let mut rects = Vec::with_capacity(sys.k);
    for (i, f) in sys.frames().iter().enumerate() {
        let (x, y) = (coord(f[0]), coord(f[2]));
        let w = &coord(f[1]) - &x;
        let h = &coord(f[3]) - &y;
        if !(&w - &threshold).is_positive() || !(&h - &threshold).is_positive() {
            return Err(Discard::Degenerate { rect: i });
        }
        rects.push(Rect::new(x, y, w, h));
    }
    let one = FieldElement::one(base);
    let p = Partition::new(one.clone(), one, rects).map_err(|_| Discard::InvalidTiling)?;
    let report = verify(&p);
    if !report.tiling_ok {
        return Err(Discard::InvalidTiling);
    }
    if !report.perfect {
        return Err(Discard::NotPerfect);
    }
    Ok(p)
}

/// Key identifying a partition up to the symmetries of the square: the smallest sorted list
/// of rounded rectangles over the eight images.
pub fn symmetry_key(p: &Partition) -> Vec<[i64; 4]> {
    let mut best: Option<Vec<[i64; 4]>> = None;
    for t in [false, true] {
        for fx in [false, true] {
            for fy in [false, true] {
                let q = p.transformed(t, fx, fy);
                let mut key: Vec<[i64; 4]> = q
                    .approx_rects()
                    .iter()
                    .map(|r| r.map(|v| (v * 1e9).round() as i64))
                    .collect();
                key.sort();
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    best.unwrap()
}

fn dedupe(parts: Vec<Partition>) -> Vec<Partition> {
    let mut seen = std::collections::BTreeSet::new();
    parts.into_iter().filter(|p| seen.insert(symmetry_key(p))).collect()
}

/// Numerical value of a reduction's unknowns at a real value of the free variable.
pub fn reduction_point(red: &Reduction, t: f64) -> Vec<f64> {
    red.values.iter().map(|v| v.eval_f64(t)).collect()
}
