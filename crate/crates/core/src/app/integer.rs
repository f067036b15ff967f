//! Integer-sided non-congruent tilings of an `n × n` square near a real perfect partition,
//! found by exhaustive perturbation of the rounded segment coordinates.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{MondrianError, Result};
use crate::exactnum::{BigRational, FieldElement};
use crate::geometry::ranked::{rank_values, tiling_witness};
use crate::geometry::{rational_partition, verify, Partition, RankRect};
use crate::spiral::solve_spiral;

/// Window used when the caller does not choose one.
pub const DEFAULT_WINDOW: i64 = 3;

/// Largest square side; keeps every area inside `i64`.
pub const MAX_SIDE: i64 = 1_000_000_000;

/// Searches larger than this many candidates are refused.
pub const MAX_CANDIDATES: u128 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntRect {
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub h: i64,
}

impl IntRect {
    pub fn area(&self) -> i64 {
        self.w * self.h
    }
}

/// Tiling of the `n × n` square by integer rectangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerPartition {
    pub n: i64,
    pub rects: Vec<IntRect>,
    /// Largest area minus smallest area.
    pub defect: i64,
}

impl IntegerPartition {
    /// The same tiling as an exact partition, for the general certifiers.
    pub fn to_partition(&self) -> Result<Partition> {
        let r = |v: i64| BigRational::from_integer(v.into());
        let rects: Vec<[BigRational; 4]> = self.rects.iter().map(|q| [r(q.x), r(q.y), r(q.w), r(q.h)]).collect();
        rational_partition(r(self.n), r(self.n), &rects)
    }
}

/// True when `p` tiles its square with positive, pairwise non-congruent integer rectangles
/// and `p.defect` is their area spread.
pub fn verify_integer(p: &IntegerPartition) -> bool {
    if p.rects.iter().any(|r| r.w <= 0 || r.h <= 0) {
        return false;
    }
    let Ok(exact) = p.to_partition() else { return false };
    let report = verify(&exact);
    report.tiling_ok && report.mondrian && Some(p.defect) == spread(&p.rects)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub best: IntegerPartition,
    /// Equals `best.defect`.
    pub defect: i64,
    pub n: i64,
    pub window: i64,
    /// Integer coordinates assigned to each internal segment before perturbation.
    pub rounded: Vec<i64>,
    pub candidates: u64,
    /// Candidates that were valid non-congruent tilings.
    pub valid: u64,
}

fn spread(rects: &[IntRect]) -> Option<i64> {
    let max = rects.iter().map(IntRect::area).max()?;
    let min = rects.iter().map(IntRect::area).min()?;
    Some(max - min)
}

/// Each rectangle edge as an index into the coordinate vector: `0` and `1` are the outer
/// sides `0` and `n`, internal segment values follow, x-values before y-values.
struct SegmentModel {
    edges: Vec<[usize; 4]>,
    internal: Vec<FieldElement>,
}

/// Indices of `values` into `0`, `outer` and the distinct internal values, which are
/// appended to `internal` and numbered from `offset`.
fn axis_indices(values: &[FieldElement], outer: &FieldElement, internal: &mut Vec<FieldElement>, offset: usize) -> Vec<usize> {
    let start = internal.len();
    values
        .iter()
        .map(|v| {
            if v.is_zero() {
                0
            } else if v == outer {
                1
            } else if let Some(i) = internal[start..].iter().position(|u| u == v) {
                offset + i
            } else {
                internal.push(v.clone());
                offset + internal.len() - 1 - start
            }
        })
        .collect()
}

fn segment_model(p: &Partition) -> SegmentModel {
    let mut internal = Vec::new();
    let xs: Vec<FieldElement> = p.rects().iter().flat_map(|r| [r.x.clone(), r.right()]).collect();
    let xi = axis_indices(&xs, p.width(), &mut internal, 2);
    let ys: Vec<FieldElement> = p.rects().iter().flat_map(|r| [r.y.clone(), r.top()]).collect();
    let offset = 2 + internal.len();
    let yi = axis_indices(&ys, p.height(), &mut internal, offset);
    let edges = (0..p.k()).map(|i| [xi[2 * i], xi[2 * i + 1], yi[2 * i], yi[2 * i + 1]]).collect();
    SegmentModel { edges, internal }
}

fn rects_at(model: &SegmentModel, coords: &[i64]) -> Option<Vec<IntRect>> {
    let mut out = Vec::with_capacity(model.edges.len());
    for e in &model.edges {
        let (x0, x1, y0, y1) = (coords[e[0]], coords[e[1]], coords[e[2]], coords[e[3]]);
        if x1 <= x0 || y1 <= y0 {
            return None;
        }
        out.push(IntRect { x: x0, y: y0, w: x1 - x0, h: y1 - y0 });
    }
    Some(out)
}

fn tiles_square(rects: &[IntRect], n: i64) -> bool {
    let xs: Vec<i64> = rects.iter().flat_map(|r| [r.x, r.x + r.w]).chain([0, n]).collect();
    let ys: Vec<i64> = rects.iter().flat_map(|r| [r.y, r.y + r.h]).chain([0, n]).collect();
    let (xr, _) = rank_values(&xs, i64::cmp);
    let (yr, _) = rank_values(&ys, i64::cmp);
    let m = rects.len();
    let ranked: Vec<RankRect> =
        (0..m).map(|i| RankRect::new(xr[2 * i], xr[2 * i + 1], yr[2 * i], yr[2 * i + 1])).collect();
    let frame = RankRect::new(xr[2 * m], xr[2 * m + 1], yr[2 * m], yr[2 * m + 1]);
    tiling_witness(&ranked, frame).is_none()
}

fn non_congruent(rects: &[IntRect]) -> bool {
    let mut shapes: Vec<(i64, i64)> = rects.iter().map(|r| (r.w.min(r.h), r.w.max(r.h))).collect();
    shapes.sort_unstable();
    shapes.windows(2).all(|w| w[0] != w[1])
}

/// Exhaustive search around the `k`-rectangle spiral solution of the unit square. Sides
/// below `4k` rarely leave room for non-congruent rectangles but are searched all the same.
pub fn integer_search(n: i64, k: usize, window: i64) -> Result<DefectReport> {
    let p = solve_spiral(k)?.partition;
    integer_search_from(&p, n, window)
}

/// Exhaustive search around any partition of a square: internal segment coordinates are
/// scaled to `n`, rounded, and every perturbation within `±window` is tried. Among the
/// valid non-congruent tilings the smallest defect wins, ties going to the lexicographically
/// smallest coordinate vector.
pub fn integer_search_from(p: &Partition, n: i64, window: i64) -> Result<DefectReport> {
    if p.width() != p.height() {
        return Err(MondrianError::InvalidInput("integer search needs a square".into()));
    }
    if !(1..=MAX_SIDE).contains(&n) || window < 0 {
        return Err(MondrianError::InvalidInput(format!("need 1 <= n <= {MAX_SIDE} and window >= 0, got n = {n}, window = {window}")));
    }
    let model = segment_model(p);
    let dims = model.internal.len();
    let side = (2 * window + 1) as u128;
    let total = side.checked_pow(dims as u32).filter(|&t| t <= MAX_CANDIDATES);
    let Some(total) = total else {
        return Err(MondrianError::InvalidInput(format!("window {window} over {dims} coordinates exceeds {MAX_CANDIDATES} candidates")));
    };
    let n_rat = BigRational::from_integer(n.into());
    let half = BigRational::new(1.into(), 2.into());
    let rounded: Vec<i64> = model
        .internal
        .iter()
        .map(|v| {
            let scaled = v.checked_div(p.width()).expect("positive width").scale(&n_rat);
            let (lo, hi) = scaled.enclosure(64);
            ((lo + hi) * &half).round().to_integer().to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    let mut coords = vec![0i64; dims + 2];
    coords[1] = n;
    let mut offsets = vec![-window; dims];
    let mut best: Option<(i64, Vec<IntRect>)> = None;
    let (mut candidates, mut valid) = (0u64, 0u64);
    for _ in 0..total {
        candidates += 1;
        for (d, o) in offsets.iter().enumerate() {
            coords[d + 2] = rounded[d] + o;
        }
        if let Some(rects) = rects_at(&model, &coords) {
            if non_congruent(&rects) && tiles_square(&rects, n) {
                valid += 1;
                let defect = spread(&rects).expect("k >= 2");
                // Offsets run in lexicographic order, so the first minimum is the smallest.
                if best.as_ref().is_none_or(|(d, _)| defect < *d) {
                    best = Some((defect, rects));
                }
            }
        }
        // Odometer with the last coordinate fastest.
        for o in offsets.iter_mut().rev() {
            if *o < window {
                *o += 1;
                break;
            }
            *o = -window;
        }
    }
    let Some((defect, rects)) = best else { return Err(MondrianError::NoValidCandidate) };
    Ok(DefectReport {
        best: IntegerPartition { n, rects, defect },
        defect,
        n,
        window,
        rounded,
        candidates,
        valid,
    })
}
