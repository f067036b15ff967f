//! Combinatorial rectangulations: segment structure, side adjacency, canonical forms under
//! the symmetries of the square, and enumeration of generic rectangulations by insertion.

mod digraph;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{MondrianError, Result};
use crate::geometry::ranked::{rank_values, tiling_witness};
use crate::geometry::{Partition, RankRect};

pub use digraph::{dual_digraph, forbidden_filter, layout_digraph, vertex_bounds, LayoutDigraph};

/// Largest `k` accepted by [`enumerate_layouts`].
pub const MAX_ENUMERATION_K: usize = 10;
/// Largest `k` accepted when decoding insertion codes.
pub const MAX_CODE_K: usize = 64;

/// A maximal segment: horizontal segments run along `y = coord` over `[lo, hi]` in x,
/// vertical ones along `x = coord` over `[lo, hi]` in y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub coord: usize,
    pub lo: usize,
    pub hi: usize,
    pub boundary: bool,
    /// Rectangles below (horizontal) or left of (vertical) the segment, in increasing position.
    pub before: Vec<usize>,
    /// Rectangles above (horizontal) or right of (vertical) the segment, in increasing position.
    pub after: Vec<usize>,
}

/// Neighbors across each side, listed clockwise around the rectangle: top left-to-right,
/// right top-to-bottom, bottom right-to-left, left bottom-to-top.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Neighbors {
    pub top: Vec<usize>,
    pub right: Vec<usize>,
    pub bottom: Vec<usize>,
    pub left: Vec<usize>,
}

/// Segment ids bounding one rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RectSides {
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub top: usize,
}

/// A generic rectangulation with `k` rectangles on an integer rank grid. Every maximal
/// segment has its own coordinate, so no two segments are collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    width: usize,
    height: usize,
    rects: Vec<RankRect>,
    hsegs: Vec<Segment>,
    vsegs: Vec<Segment>,
    sides: Vec<RectSides>,
    adjacency: Vec<Neighbors>,
}

/// One insertion step: a new rectangle in the bottom-right corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    /// Vertical steps add a right strip, horizontal ones a bottom strip.
    pub vertical: bool,
    /// How many boundary rectangles, counted from the corner, the new one slides under.
    pub j: usize,
    /// How many junctions on the far side of the supporting line the new segment passes.
    pub m: usize,
}

impl Insertion {
    pub fn h(j: usize, m: usize) -> Self {
        Insertion { vertical: false, j, m }
    }

    pub fn v(j: usize, m: usize) -> Self {
        Insertion { vertical: true, j, m }
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.vertical { 'V' } else { 'H' }, self.j)?;
        if self.m > 0 {
            write!(f, ".{}", self.m)?;
        }
        Ok(())
    }
}

fn compress(rects: &mut [RankRect]) -> (usize, usize) {
    let xs: Vec<usize> = rects.iter().flat_map(|r| [r.x0, r.x1]).collect();
    let ys: Vec<usize> = rects.iter().flat_map(|r| [r.y0, r.y1]).collect();
    let (xr, nx) = rank_values(&xs, |a, b| a.cmp(b));
    let (yr, ny) = rank_values(&ys, |a, b| a.cmp(b));
    for (i, r) in rects.iter_mut().enumerate() {
        *r = RankRect::new(xr[2 * i], xr[2 * i + 1], yr[2 * i], yr[2 * i + 1]);
    }
    (nx - 1, ny - 1)
}

/// Maximal segments along one axis. `lines` lists, per rectangle, the coordinates of its
/// lower and upper sides and its extent along the line.
fn segments(
    rects: &[RankRect],
    extent: usize,
    span: impl Fn(&RankRect) -> (usize, usize, usize, usize),
) -> (Vec<Segment>, Vec<(usize, usize)>) {
    // (coord, lo, hi, rect, is_after)
    let mut pieces: Vec<(usize, usize, usize, usize, bool)> = Vec::new();
    for (i, r) in rects.iter().enumerate() {
        let (c0, c1, lo, hi) = span(r);
        pieces.push((c0, lo, hi, i, true));
        pieces.push((c1, lo, hi, i, false));
    }
    pieces.sort();
    let mut segs: Vec<Segment> = Vec::new();
    let mut of_rect = vec![(usize::MAX, usize::MAX); rects.len()];
    for &(c, lo, hi, i, after) in &pieces {
        let joins = segs.last().is_some_and(|s| s.coord == c && lo <= s.hi);
        if !joins {
            segs.push(Segment {
                coord: c,
                lo,
                hi,
                boundary: c == 0 || c == extent,
                before: Vec::new(),
                after: Vec::new(),
            });
        }
        let id = segs.len() - 1;
        let s = segs.last_mut().unwrap();
        s.hi = s.hi.max(hi);
        if after {
            s.after.push(i);
            of_rect[i].0 = id;
        } else {
            s.before.push(i);
            of_rect[i].1 = id;
        }
    }
    (segs, of_rect)
}

impl Layout {
    /// Builds a layout from rank rectangles that tile their bounding box with T-junctions only.
    pub fn from_rank_rects(mut rects: Vec<RankRect>) -> Result<Layout> {
        if rects.is_empty() {
            return Err(MondrianError::InvalidInput("empty layout".into()));
        }
        let (width, height) = compress(&mut rects);
        if let Some(w) = tiling_witness(&rects, RankRect::new(0, width, 0, height)) {
            return Err(MondrianError::InvalidInput(format!("rectangles do not tile: {w:?}")));
        }
        let mut corners: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for r in &rects {
            for p in [(r.x0, r.y0), (r.x0, r.y1), (r.x1, r.y0), (r.x1, r.y1)] {
                *corners.entry(p).or_default() += 1;
            }
        }
        if corners.values().any(|&c| c >= 4) {
            return Err(MondrianError::InvalidInput("cross junction: layout is not generic".into()));
        }
        let (hsegs, h_of) = segments(&rects, height, |r| (r.y0, r.y1, r.x0, r.x1));
        let (vsegs, v_of) = segments(&rects, width, |r| (r.x0, r.x1, r.y0, r.y1));
        let sides = (0..rects.len())
            .map(|i| RectSides { bottom: h_of[i].0, top: h_of[i].1, left: v_of[i].0, right: v_of[i].1 })
            .collect();
        let adjacency = adjacency(&rects);
        Ok(Layout { width, height, rects, hsegs, vsegs, sides, adjacency })
    }

    /// The combinatorial layout of a placed partition; fails on cross junctions.
    pub fn from_partition(p: &Partition) -> Result<Layout> {
        let (_, rects) = p.ranked();
        Layout::from_rank_rects(rects)
    }

    pub fn single() -> Layout {
        Layout::from_rank_rects(vec![RankRect::new(0, 1, 0, 1)]).unwrap()
    }

    pub fn k(&self) -> usize {
        self.rects.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn rects(&self) -> &[RankRect] {
        &self.rects
    }

    pub fn hsegs(&self) -> &[Segment] {
        &self.hsegs
    }

    pub fn vsegs(&self) -> &[Segment] {
        &self.vsegs
    }

    pub fn sides(&self) -> &[RectSides] {
        &self.sides
    }

    pub fn adjacency(&self) -> &[Neighbors] {
        &self.adjacency
    }

    /// Index of the rectangle in the top-left corner.
    pub fn top_left(&self) -> usize {
        self.rects.iter().position(|r| r.x0 == 0 && r.y1 == self.height).unwrap()
    }

    /// Some internal segment has exactly one rectangle on each side, i.e. two rectangles
    /// share a full side in every realization.
    pub fn has_shared_full_side(&self) -> bool {
        self.hsegs.iter().chain(&self.vsegs).any(|s| !s.boundary && s.before.len() == 1 && s.after.len() == 1)
    }

    /// Applies a symmetry of the square: optional transpose, then optional flips.
    pub fn transformed(&self, transpose: bool, flip_x: bool, flip_y: bool) -> Layout {
        let (rects, _) = self.transformed_rects(transpose, flip_x, flip_y);
        Layout::from_rank_rects(rects).expect("symmetry preserves validity")
    }

    /// All eight images under the symmetry group, in a fixed order.
    pub fn symmetries(&self) -> Vec<Layout> {
        let mut out = Vec::with_capacity(8);
        for t in [false, true] {
            for fx in [false, true] {
                for fy in [false, true] {
                    out.push(self.transformed(t, fx, fy));
                }
            }
        }
        out
    }

    /// Code of the strong equivalence class: breadth-first labels from the top-left
    /// rectangle, listing each rectangle's neighbors clockwise.
    pub fn class_code(&self) -> Vec<u16> {
        class_code(&self.rects, self.height, &self.adjacency)
    }

    fn transformed_rects(&self, transpose: bool, flip_x: bool, flip_y: bool) -> (Vec<RankRect>, usize) {
        let (w, h) = if transpose { (self.height, self.width) } else { (self.width, self.height) };
        let rects = self
            .rects
            .iter()
            .map(|r| {
                let r = if transpose { RankRect::new(r.y0, r.y1, r.x0, r.x1) } else { *r };
                let (x0, x1) = if flip_x { (w - r.x1, w - r.x0) } else { (r.x0, r.x1) };
                let (y0, y1) = if flip_y { (h - r.y1, h - r.y0) } else { (r.y0, r.y1) };
                RankRect::new(x0, x1, y0, y1)
            })
            .collect();
        (rects, h)
    }

    /// Canonical code under the symmetry group and the representative attaining it.
    pub fn canonical(&self) -> (Vec<u16>, Layout) {
        let mut best: Option<(Vec<u16>, [bool; 3])> = None;
        for t in [false, true] {
            for fx in [false, true] {
                for fy in [false, true] {
                    let (rects, h) = self.transformed_rects(t, fx, fy);
                    let code = class_code(&rects, h, &adjacency(&rects));
                    if best.as_ref().is_none_or(|(b, _)| code < *b) {
                        best = Some((code, [t, fx, fy]));
                    }
                }
            }
        }
        let (code, [t, fx, fy]) = best.unwrap();
        (code, self.transformed(t, fx, fy))
    }

    /// True when both describe the same strong class (same labelled adjacency).
    pub fn same_class(&self, other: &Layout) -> bool {
        self.class_code() == other.class_code()
    }

    /// Reflection in the anti-diagonal through the bottom-right corner; swaps the roles of
    /// horizontal and vertical insertion.
    fn anti_transposed(&self) -> Layout {
        self.transformed(true, true, true)
    }

    /// "Above" relation between horizontal segments forced by the strong class: each
    /// rectangle's top is above its bottom, and a segment ending on a vertical line lies
    /// strictly between the top and bottom of the rectangle across that line.
    fn height_order(&self) -> Vec<Vec<usize>> {
        let mut above = vec![Vec::new(); self.hsegs.len()];
        for s in &self.sides {
            above[s.top].push(s.bottom);
        }
        for (a, seg) in self.hsegs.iter().enumerate() {
            for (i, r) in self.rects.iter().enumerate() {
                let across = (r.x1 == seg.lo && seg.lo > 0) || (r.x0 == seg.hi && seg.hi < self.width);
                if across && r.y0 < seg.coord && seg.coord < r.y1 {
                    above[self.sides[i].top].push(a);
                    above[a].push(self.sides[i].bottom);
                }
            }
        }
        above
    }

    /// Inserts a rectangle in the bottom-right corner; `None` when the step does not apply.
    pub fn insert(&self, step: Insertion) -> Option<Layout> {
        if step.vertical {
            let h = Insertion { vertical: false, ..step };
            return self.anti_transposed().insert(h).map(|l| l.anti_transposed());
        }
        let Insertion { j, m, .. } = step;
        let w = self.width;
        let mut bottoms: Vec<usize> = (0..self.k()).filter(|&i| self.rects[i].y0 == 0).collect();
        bottoms.sort_by_key(|&i| std::cmp::Reverse(self.rects[i].x0));
        if j == 0 || j > bottoms.len() {
            return None;
        }
        let raised = &bottoms[..j];
        let t = self.rects[bottoms[j - 1]];
        // Rectangles left of the line the new rectangle's left side extends.
        let mut lefts: Vec<usize> =
            (0..self.k()).filter(|&i| t.x0 > 0 && self.rects[i].x1 == t.x0 && self.rects[i].y0 < t.y1).collect();
        lefts.sort_by_key(|&i| self.rects[i].y0);
        if m > 0 && m >= lefts.len() {
            return None;
        }
        let order = self.height_order();
        let n = self.hsegs.len();
        let new_seg = n;
        let mut above = order;
        above.push(Vec::new());
        for &u in raised {
            above[self.sides[u].top].push(new_seg);
        }
        let bottom_side = self.sides[bottoms[0]].bottom;
        above[new_seg].push(bottom_side);
        if let Some(&l) = lefts.get(m) {
            above[self.sides[l].top].push(new_seg);
        }
        if m > 0 {
            above[new_seg].push(self.sides[lefts[m - 1]].top);
        }
        let rank = topological_heights(&above)?;
        let mut rects: Vec<RankRect> = (0..self.k())
            .map(|i| {
                let r = self.rects[i];
                let s = self.sides[i];
                RankRect::new(r.x0, r.x1, rank[s.bottom], rank[s.top])
            })
            .collect();
        for &u in raised {
            rects[u].y0 = rank[new_seg];
        }
        rects.push(RankRect::new(t.x0, w, 0, rank[new_seg]));
        Some(Layout::from_rank_rects(rects).expect("insertion keeps a generic rectangulation"))
    }

    /// Removes the bottom-right rectangle; returns the smaller layout and the insertion that
    /// restores this one. `None` for a single rectangle.
    pub fn delete_last(&self) -> Option<(Layout, Insertion)> {
        if self.k() == 1 {
            return None;
        }
        let (w, h) = (self.width, self.height);
        let b = self.rects.iter().position(|r| r.x1 == w && r.y0 == 0).unwrap();
        let br = self.rects[b];
        let h_type = if br.y1 == h {
            false
        } else if br.x0 == 0 {
            true
        } else {
            self.rects.iter().any(|x| x.x1 == br.x0 && x.y0 < br.y1 && br.y1 < x.y1)
        };
        if !h_type {
            let (smaller, step) = self.anti_transposed().delete_last()?;
            return Some((smaller.anti_transposed(), Insertion { vertical: true, ..step }));
        }
        let mut rects = self.rects.clone();
        let raised: Vec<usize> = (0..rects.len()).filter(|&i| rects[i].y0 == br.y1 && rects[i].x0 >= br.x0).collect();
        let m = rects.iter().filter(|r| br.x0 > 0 && r.x1 == br.x0 && r.y1 <= br.y1).count();
        for &i in &raised {
            rects[i].y0 = 0;
        }
        rects.remove(b);
        let smaller = Layout::from_rank_rects(rects).expect("deletion keeps a generic rectangulation");
        Some((smaller, Insertion::h(raised.len(), m)))
    }

    /// Insertion sequence rebuilding this layout from a single rectangle.
    pub fn insertion_sequence(&self) -> Vec<Insertion> {
        let mut steps = Vec::with_capacity(self.k());
        let mut cur = self.clone();
        while let Some((smaller, step)) = cur.delete_last() {
            steps.push(step);
            cur = smaller;
        }
        steps.reverse();
        steps
    }

    /// Dump encoding: the insertion sequence, e.g. `V1H1.1H2`; empty for one rectangle.
    pub fn code(&self) -> String {
        self.insertion_sequence().iter().map(Insertion::to_string).collect()
    }

    /// Parses a dump encoding.
    pub fn from_code(code: &str) -> Result<Layout> {
        let bytes = code.trim().as_bytes();
        let mut cur = Layout::single();
        let mut i = 0;
        let number = |i: &mut usize| -> Result<usize> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            if start == *i || *i - start > 3 {
                return Err(MondrianError::ParseError(format!("missing or oversized count at {start}")));
            }
            Ok(std::str::from_utf8(&bytes[start..*i]).unwrap().parse().unwrap())
        };
        while i < bytes.len() {
            let kind = bytes[i];
            if kind != b'H' && kind != b'V' {
                return Err(MondrianError::ParseError(format!("unexpected byte {kind:#04x} at {i}")));
            }
            let at = i;
            i += 1;
            let j = number(&mut i)?;
            let mut m = 0;
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                m = number(&mut i)?;
            }
            if cur.k() >= MAX_CODE_K {
                return Err(MondrianError::ParseError(format!("more than {MAX_CODE_K} rectangles")));
            }
            let step = Insertion { vertical: kind == b'V', j, m };
            cur = cur.insert(step).ok_or_else(|| MondrianError::ParseError(format!("step {step} at {at} does not apply")))?;
        }
        Ok(cur)
    }
}

/// Heights of the nodes of an "above" DAG: a linear extension numbered from the bottom.
/// `None` on a cycle.
fn topological_heights(above: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = above.len();
    let mut indeg = vec![0usize; n];
    for list in above {
        for &b in list {
            indeg[b] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut pos = vec![0; n];
    let mut count = 0;
    while let Some(v) = ready.pop() {
        pos[v] = n - 1 - count;
        count += 1;
        for &b in &above[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(b);
            }
        }
    }
    (count == n).then_some(pos)
}

/// Breadth-first labels from the top-left rectangle, then each rectangle's neighbor lists
/// clockwise in label order.
fn class_code(rects: &[RankRect], height: usize, adjacency: &[Neighbors]) -> Vec<u16> {
    let k = rects.len();
    let mut label = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let start = rects.iter().position(|r| r.x0 == 0 && r.y1 == height).unwrap();
    label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let r = order[head];
        head += 1;
        let n = &adjacency[r];
        for &m in n.top.iter().chain(&n.right).chain(&n.bottom).chain(&n.left) {
            if label[m] == usize::MAX {
                label[m] = order.len();
                order.push(m);
            }
        }
    }
    let mut code = Vec::with_capacity(6 * k);
    for &r in &order {
        let n = &adjacency[r];
        for side in [&n.top, &n.right, &n.bottom, &n.left] {
            code.push(side.len() as u16);
            code.extend(side.iter().map(|&m| label[m] as u16));
        }
    }
    code
}

fn overlap(a0: usize, a1: usize, b0: usize, b1: usize) -> bool {
    a0 < b1 && b0 < a1
}

fn adjacency(rects: &[RankRect]) -> Vec<Neighbors> {
    let mut out = vec![Neighbors::default(); rects.len()];
    for (i, a) in rects.iter().enumerate() {
        let n = &mut out[i];
        for (j, b) in rects.iter().enumerate() {
            if b.y0 == a.y1 && overlap(a.x0, a.x1, b.x0, b.x1) {
                n.top.push(j);
            }
            if b.x0 == a.x1 && overlap(a.y0, a.y1, b.y0, b.y1) {
                n.right.push(j);
            }
            if b.y1 == a.y0 && overlap(a.x0, a.x1, b.x0, b.x1) {
                n.bottom.push(j);
            }
            if b.x1 == a.x0 && overlap(a.y0, a.y1, b.y0, b.y1) {
                n.left.push(j);
            }
        }
        n.top.sort_by_key(|&j| rects[j].x0);
        n.right.sort_by_key(|&j| std::cmp::Reverse(rects[j].y0));
        n.bottom.sort_by_key(|&j| std::cmp::Reverse(rects[j].x0));
        n.left.sort_by_key(|&j| rects[j].y0);
    }
    out
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.code();
        if code.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{code}")
        }
    }
}

/// All generic rectangulations with `k` rectangles, without symmetry reduction, in the
/// deterministic order of the insertion tree.
pub fn all_rectangulations(k: usize) -> Result<Vec<Layout>> {
    if k == 0 {
        return Err(MondrianError::InvalidInput("k must be positive".into()));
    }
    if k > MAX_ENUMERATION_K {
        return Err(MondrianError::KTooLarge { k, max: MAX_ENUMERATION_K });
    }
    let mut level = vec![Layout::single()];
    for _ in 1..k {
        let mut next = Vec::new();
        for l in &level {
            next.extend(children(l));
        }
        level = next;
    }
    Ok(level)
}

fn children(l: &Layout) -> Vec<Layout> {
    let max_j = l.k();
    let mut out = Vec::new();
    for vertical in [false, true] {
        for j in 1..=max_j {
            let mut any = false;
            for m in 0..max_j {
                match l.insert(Insertion { vertical, j, m }) {
                    Some(c) => {
                        any = true;
                        out.push(c);
                    }
                    None if m == 0 => break,
                    None => {}
                }
            }
            if !any {
                break;
            }
        }
    }
    out
}

/// One representative per symmetry class of generic rectangulations with `k` rectangles,
/// sorted by canonical code.
pub fn enumerate_layouts(k: usize) -> Result<Vec<Layout>> {
    if !(2..=MAX_ENUMERATION_K).contains(&k) {
        return if k > MAX_ENUMERATION_K {
            Err(MondrianError::KTooLarge { k, max: MAX_ENUMERATION_K })
        } else {
            Err(MondrianError::InvalidInput(format!("k = {k} must be at least 2")))
        };
    }
    let mut classes: BTreeMap<Vec<u16>, Layout> = BTreeMap::new();
    for l in all_rectangulations(k)? {
        let (code, rep) = l.canonical();
        classes.entry(code).or_insert(rep);
    }
    Ok(classes.into_values().collect())
}
