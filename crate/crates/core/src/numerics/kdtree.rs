//! Static kd-tree for nearest-neighbour and radius queries in low dimension.

#[derive(Debug, Clone)]
pub struct KdTree {
    dim: usize,
    points: Vec<f64>,
    /// Permutation of point ids in tree order.
    ids: Vec<usize>,
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    start: usize,
    end: usize,
    axis: usize,
    split: f64,
    left: usize,
    right: usize,
}

const LEAF: usize = 8;
const NONE: usize = usize::MAX;

impl KdTree {
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Self {
        let mut flat = Vec::with_capacity(points.len() * dim);
        for p in points {
            assert_eq!(p.len(), dim);
            flat.extend_from_slice(p);
        }
        let mut tree = KdTree { dim, points: flat, ids: (0..points.len()).collect(), nodes: Vec::new() };
        if !points.is_empty() {
            tree.build(0, points.len());
        }
        tree
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn point(&self, id: usize) -> &[f64] {
        &self.points[id * self.dim..(id + 1) * self.dim]
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(Node { start, end, axis: 0, split: 0.0, left: NONE, right: NONE });
        if end - start <= LEAF {
            return idx;
        }
        let dim = self.dim;
        let mut best = (0, -1.0);
        for a in 0..dim {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &id in &self.ids[start..end] {
                let v = self.points[id * dim + a];
                lo = lo.min(v);
                hi = hi.max(v);
            }
            if hi - lo > best.1 {
                best = (a, hi - lo);
            }
        }
        let axis = best.0;
        let mid = (start + end) / 2;
        let pts = &self.points;
        self.ids[start..end].select_nth_unstable_by(mid - start, |&a, &b| pts[a * dim + axis].total_cmp(&pts[b * dim + axis]));
        let split = self.points[self.ids[mid] * dim + axis];
        let left = self.build(start, mid);
        let right = self.build(mid, end);
        self.nodes[idx] = Node { start, end, axis, split, left, right };
        idx
    }

    fn dist2(&self, id: usize, q: &[f64]) -> f64 {
        self.point(id).iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    /// Id and squared distance of the point nearest to `q`.
    pub fn nearest(&self, q: &[f64]) -> Option<(usize, f64)> {
        if self.is_empty() {
            return None;
        }
        let mut best = (NONE, f64::INFINITY);
        self.nearest_in(0, q, &mut best);
        Some(best)
    }

    fn nearest_in(&self, node: usize, q: &[f64], best: &mut (usize, f64)) {
        let n = self.nodes[node];
        if n.left == NONE {
            for &id in &self.ids[n.start..n.end] {
                let d = self.dist2(id, q);
                if d < best.1 || (d == best.1 && id < best.0) {
                    *best = (id, d);
                }
            }
            return;
        }
        let diff = q[n.axis] - n.split;
        let (first, second) = if diff < 0.0 { (n.left, n.right) } else { (n.right, n.left) };
        self.nearest_in(first, q, best);
        if diff * diff <= best.1 {
            self.nearest_in(second, q, best);
        }
    }

    /// Calls `visit(id)` for every point within distance `r` of `q`.
    /// Returning `false` from `visit` stops the search early.
    pub fn within(&self, q: &[f64], r: f64, visit: &mut dyn FnMut(usize) -> bool) -> bool {
        if self.is_empty() {
            return true;
        }
        self.within_in(0, q, r * r, visit)
    }

    fn within_in(&self, node: usize, q: &[f64], r2: f64, visit: &mut dyn FnMut(usize) -> bool) -> bool {
        let n = self.nodes[node];
        if n.left == NONE {
            for &id in &self.ids[n.start..n.end] {
                if self.dist2(id, q) <= r2 && !visit(id) {
                    return false;
                }
            }
            return true;
        }
        let diff = q[n.axis] - n.split;
        let (first, second) = if diff < 0.0 { (n.left, n.right) } else { (n.right, n.left) };
        if !self.within_in(first, q, r2, visit) {
            return false;
        }
        if diff * diff <= r2 {
            return self.within_in(second, q, r2, visit);
        }
        true
    }
}
