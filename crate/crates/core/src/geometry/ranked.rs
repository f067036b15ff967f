//! Combinatorial predicates on rectangles whose coordinates are replaced by their ranks
//! among the distinct coordinate values. Exact comparisons happen once, while ranking.

use std::cmp::Ordering;

/// A rectangle `[x0, x1] × [y0, y1]` in rank coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankRect {
    pub x0: usize,
    pub x1: usize,
    pub y0: usize,
    pub y1: usize,
}

impl RankRect {
    pub fn new(x0: usize, x1: usize, y0: usize, y1: usize) -> Self {
        RankRect { x0, x1, y0, y1 }
    }

    pub fn inside(&self, b: &RankRect) -> bool {
        self.x0 >= b.x0 && self.x1 <= b.x1 && self.y0 >= b.y0 && self.y1 <= b.y1
    }

    pub fn disjoint(&self, b: &RankRect) -> bool {
        self.x1 <= b.x0 || b.x1 <= self.x0 || self.y1 <= b.y0 || b.y1 <= self.y0
    }
}

/// Why a family of rectangles fails to tile its frame, or which tiles violate a predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Rectangle reaching outside the outer frame.
    OutOfBounds { rect: usize },
    /// Uncovered stretch in the horizontal strip starting at y-rank `strip`, at x-rank `at`.
    Gap { strip: usize, at: usize },
    /// Two rectangles whose interiors meet.
    Overlap { first: usize, second: usize },
    /// Rectangle whose area differs from the common value.
    AreaMismatch { rect: usize },
    Congruent { first: usize, second: usize },
    /// Two rectangles sharing an identical full side.
    CommonSide { first: usize, second: usize },
    /// A proper subset of at least two rectangles tiling a rectangle.
    SubRectangle { rects: Vec<usize> },
}

/// Ranks of `values` among their distinct values under `cmp`; returns `(ranks, distinct count)`.
pub fn rank_values<T>(values: &[T], mut cmp: impl FnMut(&T, &T) -> Ordering) -> (Vec<usize>, usize) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| cmp(&values[i], &values[j]));
    let mut ranks = vec![0; values.len()];
    let mut r = 0;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 && cmp(&values[order[pos - 1]], &values[i]) != Ordering::Equal {
            r += 1;
        }
        ranks[i] = r;
    }
    let n = if values.is_empty() { 0 } else { r + 1 };
    (ranks, n)
}

/// Strip sweep: within each horizontal strip of `frame` the x-intervals of the rectangles
/// crossing it must partition the frame's x-range exactly.
pub fn tiling_witness(rects: &[RankRect], frame: RankRect) -> Option<Witness> {
    for (i, r) in rects.iter().enumerate() {
        if !r.inside(&frame) || r.x0 >= r.x1 || r.y0 >= r.y1 {
            return Some(Witness::OutOfBounds { rect: i });
        }
    }
    for strip in frame.y0..frame.y1 {
        let mut row: Vec<(usize, usize, usize)> = rects
            .iter()
            .enumerate()
            .filter(|(_, r)| r.y0 <= strip && strip < r.y1)
            .map(|(i, r)| (r.x0, r.x1, i))
            .collect();
        row.sort();
        let mut at = frame.x0;
        let mut prev: Option<usize> = None;
        for &(x0, x1, i) in &row {
            match x0.cmp(&at) {
                Ordering::Greater => return Some(Witness::Gap { strip, at }),
                Ordering::Less => {
                    return Some(Witness::Overlap { first: prev.unwrap_or(i), second: i });
                }
                Ordering::Equal => {}
            }
            at = x1;
            prev = Some(i);
        }
        if at != frame.x1 {
            return Some(Witness::Gap { strip, at });
        }
    }
    None
}

/// Pairs sharing an identical full side.
pub fn common_sides(rects: &[RankRect]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            let (a, b) = (&rects[i], &rects[j]);
            let vertical = (a.x1 == b.x0 || b.x1 == a.x0) && a.y0 == b.y0 && a.y1 == b.y1;
            let horizontal = (a.y1 == b.y0 || b.y1 == a.y0) && a.x0 == b.x0 && a.x1 == b.x1;
            if vertical || horizontal {
                out.push((i, j));
            }
        }
    }
    out
}

/// First block (in rank order) exactly tiled by a proper subset of at least two rectangles.
/// Assumes `rects` tile `frame`.
pub fn sub_rectangle(rects: &[RankRect], frame: RankRect) -> Option<Vec<usize>> {
    let xs = sorted_unique(rects.iter().flat_map(|r| [r.x0, r.x1]));
    let ys = sorted_unique(rects.iter().flat_map(|r| [r.y0, r.y1]));
    for (ia, &xa) in xs.iter().enumerate() {
        for &xb in &xs[ia + 1..] {
            for (ja, &ya) in ys.iter().enumerate() {
                for &yb in &ys[ja + 1..] {
                    let block = RankRect::new(xa, xb, ya, yb);
                    if block == frame {
                        continue;
                    }
                    if let Some(members) = exact_cover(rects, &block) {
                        if members.len() >= 2 {
                            return Some(members);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Members of `block` when every rectangle is either inside it or disjoint from it.
fn exact_cover(rects: &[RankRect], block: &RankRect) -> Option<Vec<usize>> {
    let mut members = Vec::new();
    for (i, r) in rects.iter().enumerate() {
        if r.inside(block) {
            members.push(i);
        } else if !r.disjoint(block) {
            return None;
        }
    }
    Some(members)
}

fn sorted_unique(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}
