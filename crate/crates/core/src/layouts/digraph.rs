//! Top-to-bottom segment digraphs of rectangulations and their left-to-right duals.

use std::collections::BTreeSet;

use petgraph::algo::is_isomorphic;
use petgraph::graph::DiGraph;

use super::Layout;
use crate::error::{MondrianError, Result};
use crate::geometry::ranked::{sub_rectangle, tiling_witness};
use crate::geometry::RankRect;

/// Vertices are maximal horizontal segments in a topological order (source 0 is the top
/// side, sink `n - 1` the bottom side); arc `i` is rectangle `i`, from the segment holding
/// its top side to the one holding its bottom side. The orders record the planar embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    /// Arcs leaving each vertex, left to right.
    out_order: Vec<Vec<usize>>,
    /// Arcs entering each vertex, left to right.
    in_order: Vec<Vec<usize>>,
}

impl LayoutDigraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// `(tail, head)` of each arc; the index is the rectangle id.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_order[v]
    }

    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_order[v]
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.n - 1
    }

    /// Faces of the plane embedding, the outer one included: `k + 2 - n` by Euler's relation.
    /// The dual splits the outer face into its source and sink.
    pub fn face_count(&self) -> usize {
        self.arcs.len() + 2 - self.n
    }

    pub fn to_petgraph(&self) -> DiGraph<(), usize> {
        let mut g = DiGraph::with_capacity(self.n, self.arcs.len());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for (i, &(t, h)) in self.arcs.iter().enumerate() {
            g.add_edge(nodes[t], nodes[h], i);
        }
        g
    }

    /// Isomorphism as directed multigraphs, ignoring the embedding.
    pub fn is_isomorphic_to(&self, other: &LayoutDigraph) -> bool {
        self.n == other.n && self.arcs.len() == other.arcs.len() && is_isomorphic(&self.to_petgraph(), &other.to_petgraph())
    }

    /// All arcs reversed: the digraph of the layout turned upside down.
    pub fn converse(&self) -> LayoutDigraph {
        let n = self.n;
        let flip = |v: usize| n - 1 - v;
        let arcs = self.arcs.iter().map(|&(t, h)| (flip(h), flip(t))).collect();
        let reorder = |lists: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            (0..n).map(|v| lists[flip(v)].iter().rev().copied().collect()).collect()
        };
        LayoutDigraph { n, arcs, out_order: reorder(&self.in_order), in_order: reorder(&self.out_order) }
    }

    fn degrees_ok(&self) -> bool {
        if self.n < 2 {
            return false;
        }
        let internal = (1..self.n - 1).all(|v| self.out_order[v].len() + self.in_order[v].len() >= 3);
        self.out_order[0].len() >= 2 && self.in_order[self.n - 1].len() >= 2 && internal
    }
}

pub fn layout_digraph(l: &Layout) -> LayoutDigraph {
    let segs = l.hsegs();
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by(|&a, &b| segs[b].coord.cmp(&segs[a].coord).then(segs[a].lo.cmp(&segs[b].lo)));
    let mut index = vec![0; segs.len()];
    for (pos, &s) in order.iter().enumerate() {
        index[s] = pos;
    }
    let arcs = l.sides().iter().map(|s| (index[s.top], index[s.bottom])).collect();
    let out_order = order.iter().map(|&s| segs[s].before.clone()).collect();
    let in_order = order.iter().map(|&s| segs[s].after.clone()).collect();
    LayoutDigraph { n: segs.len(), arcs, out_order, in_order }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// Left and right face of every arc: `(faces per arc, face count)`, where face 0 is the left
/// outer side and face 1 the right outer side.
fn arc_faces(g: &LayoutDigraph) -> Result<(Vec<(usize, usize)>, usize)> {
    let k = g.arcs.len();
    let bad = || MondrianError::InvalidInput("digraph does not come from a rectangulation".into());
    if g.n < 2 || k == 0 {
        return Err(bad());
    }
    // Slot 2a is the left side of arc a, 2a + 1 its right side; 2k and 2k + 1 are the outer sides.
    let (outer_left, outer_right) = (2 * k, 2 * k + 1);
    let mut uf = UnionFind((0..2 * k + 2).collect());
    for v in 0..g.n {
        let (outs, ins) = (&g.out_order[v], &g.in_order[v]);
        for w in outs.windows(2).chain(ins.windows(2)) {
            uf.union(2 * w[0] + 1, 2 * w[1]);
        }
        let (first, last) = match (v == 0, v == g.n - 1) {
            (true, false) => (outs.first(), outs.last()),
            (false, true) => (ins.first(), ins.last()),
            (false, false) => {
                let (Some(&o0), Some(&i0), Some(&o1), Some(&i1)) = (outs.first(), ins.first(), outs.last(), ins.last()) else {
                    return Err(bad());
                };
                uf.union(2 * o0, 2 * i0);
                uf.union(2 * o1 + 1, 2 * i1 + 1);
                continue;
            }
            (true, true) => return Err(bad()),
        };
        let (Some(&a), Some(&b)) = (first, last) else {
            return Err(bad());
        };
        uf.union(2 * a, outer_left);
        uf.union(2 * b + 1, outer_right);
    }
    let (l, r) = (uf.find(outer_left), uf.find(outer_right));
    if l == r {
        return Err(bad());
    }
    let mut ids = vec![usize::MAX; 2 * k + 2];
    ids[l] = 0;
    ids[r] = 1;
    let mut next = 2;
    let mut faces = Vec::with_capacity(k);
    for a in 0..k {
        let mut side = [0; 2];
        for (s, slot) in [2 * a, 2 * a + 1].into_iter().enumerate() {
            let root = uf.find(slot);
            if ids[root] == usize::MAX {
                ids[root] = next;
                next += 1;
            }
            side[s] = ids[root];
        }
        faces.push((side[0], side[1]));
    }
    Ok((faces, next))
}

/// The left-to-right digraph: vertices are the left outer side, the bounded faces of `g`
/// (maximal vertical segments) and the right outer side; arc `i` crosses arc `i` of `g`.
/// Taking the dual twice gives back `g`.
pub fn dual_digraph(g: &LayoutDigraph) -> Result<LayoutDigraph> {
    let (faces, m) = arc_faces(g)?;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for &(a, b) in &faces {
        succ[a].push(b);
        indeg[b] += 1;
    }
    // Kahn's algorithm with the smallest ready face first keeps the numbering deterministic.
    let mut ready: BTreeSet<usize> = (0..m).filter(|&f| indeg[f] == 0).collect();
    if ready.len() != 1 || !ready.contains(&0) {
        return Err(MondrianError::InvalidInput("dual digraph must have the left side as unique source".into()));
    }
    let mut pos = vec![usize::MAX; m];
    let mut count = 0;
    while let Some(f) = ready.pop_first() {
        pos[f] = count;
        count += 1;
        for &b in &succ[f] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if count != m || pos[1] != m - 1 {
        return Err(MondrianError::InvalidInput("dual digraph is not acyclic with the right side last".into()));
    }
    let arcs: Vec<(usize, usize)> = faces.iter().map(|&(a, b)| (pos[a], pos[b])).collect();
    let mut out_order = vec![Vec::new(); m];
    let mut in_order = vec![Vec::new(); m];
    for (i, &(t, h)) in arcs.iter().enumerate() {
        out_order[t].push(i);
        in_order[h].push(i);
    }
    // The dual is the digraph of the layout reflected in its anti-diagonal, so left-to-right
    // there is top-to-bottom here. Rectangles along a vertical segment are stacked, and
    // higher ones leave horizontal segments earlier in the topological order of `g`.
    for list in out_order.iter_mut().chain(in_order.iter_mut()) {
        list.sort_by_key(|&a| g.arcs[a].0);
    }
    Ok(LayoutDigraph { n: m, arcs, out_order, in_order })
}

/// Rank rectangles realizing `g` with x-coordinates from `dual`: segment positions are the
/// topological indices, so every segment gets its own coordinate.
pub fn realization(g: &LayoutDigraph, dual: &LayoutDigraph) -> Vec<RankRect> {
    let top = g.n - 1;
    g.arcs
        .iter()
        .zip(&dual.arcs)
        .map(|(&(t, h), &(l, r))| RankRect::new(l, r, top - h, top - t))
        .collect()
}

/// True when `g` survives the necessary conditions for carrying a proper perfect partition:
/// degree conditions on `g` and its dual (which exclude shared full sides and full-width or
/// full-height rectangles) and no block of two or more rectangles forming a rectangle.
pub fn forbidden_filter(g: &LayoutDigraph) -> bool {
    if !g.degrees_ok() {
        return false;
    }
    let Ok(dual) = dual_digraph(g) else {
        return false;
    };
    if !dual.degrees_ok() {
        return false;
    }
    let rects = realization(g, &dual);
    let frame = RankRect::new(0, dual.n - 1, 0, g.n - 1);
    tiling_witness(&rects, frame).is_none() && sub_rectangle(&rects, frame).is_none()
}

/// Range of vertex counts for digraphs of proper perfect partitions with `k` rectangles.
pub fn vertex_bounds(k: usize) -> (usize, usize) {
    ((k + 7).div_ceil(3), 2 * (k + 1) / 3)
}
