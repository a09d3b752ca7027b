use crate::geom::{Aabb, Triangle, Vec3};

const LEAF_SIZE: usize = 4;

#[derive(Debug, Clone)]
struct Node {
    bounds: Aabb,
    /// Leaf: first primitive index. Interior: index of the right child (the
    /// left child immediately follows the node).
    start_or_right: usize,
    count: usize,
}

/// Bounding-volume hierarchy over a triangle soup. Traversal is
/// deterministic: among equal-distance hits the lower triangle index wins.
#[derive(Debug, Clone)]
pub struct Bvh {
    nodes: Vec<Node>,
    order: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    pub t: f64,
    pub triangle: usize,
}

impl Bvh {
    pub fn build(tris: &[Triangle]) -> Self {
        let mut bvh = Self {
            nodes: Vec::new(),
            order: (0..tris.len()).collect(),
        };
        if !tris.is_empty() {
            let bounds: Vec<Aabb> = tris.iter().map(tri_bounds).collect();
            let centroids: Vec<Vec3> = tris.iter().map(|t| t.centroid()).collect();
            bvh.split(&bounds, &centroids, 0, tris.len());
        }
        bvh
    }

    fn split(&mut self, bounds: &[Aabb], centroids: &[Vec3], lo: usize, hi: usize) -> usize {
        let mut b = Aabb::empty();
        let mut cb = Aabb::empty();
        for &i in &self.order[lo..hi] {
            b = b.union(&bounds[i]);
            cb.grow(centroids[i]);
        }
        let me = self.nodes.len();
        self.nodes.push(Node {
            bounds: b,
            start_or_right: lo,
            count: hi - lo,
        });
        if hi - lo <= LEAF_SIZE {
            return me;
        }
        let e = cb.extent();
        let axis = if e.x >= e.y && e.x >= e.z {
            0
        } else if e.y >= e.z {
            1
        } else {
            2
        };
        let mid = (lo + hi) / 2;
        self.order[lo..hi].sort_by(|&a, &b| {
            centroids[a]
                .axis(axis)
                .total_cmp(&centroids[b].axis(axis))
                .then(a.cmp(&b))
        });
        self.split(bounds, centroids, lo, mid);
        let right = self.split(bounds, centroids, mid, hi);
        self.nodes[me].start_or_right = right;
        self.nodes[me].count = 0;
        me
    }

    /// Nearest hit with `t < t_max`.
    pub fn intersect(&self, tris: &[Triangle], origin: Vec3, dir: Vec3, t_max: f64) -> Option<Hit> {
        if self.nodes.is_empty() {
            return None;
        }
        let inv = Vec3::new(1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z);
        let mut best: Option<Hit> = None;
        let mut limit = t_max;
        let mut stack = vec![0usize];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            if node.bounds.hit(origin, inv, limit).is_none() {
                continue;
            }
            if node.count > 0 {
                for &i in &self.order[node.start_or_right..node.start_or_right + node.count] {
                    if let Some(t) = tris[i].intersect(origin, dir) {
                        let better = match best {
                            None => t < limit,
                            Some(h) => t < h.t || (t == h.t && i < h.triangle),
                        };
                        if better {
                            best = Some(Hit { t, triangle: i });
                            limit = t;
                        }
                    }
                }
            } else {
                stack.push(node.start_or_right);
                stack.push(n + 1);
            }
        }
        best
    }

    /// True when anything lies along the ray before `t_max`.
    pub fn occluded(&self, tris: &[Triangle], origin: Vec3, dir: Vec3, t_max: f64) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let inv = Vec3::new(1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z);
        let mut stack = vec![0usize];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            if node.bounds.hit(origin, inv, t_max).is_none() {
                continue;
            }
            if node.count > 0 {
                let hit = self.order[node.start_or_right..node.start_or_right + node.count]
                    .iter()
                    .any(|&i| tris[i].intersect(origin, dir).is_some_and(|t| t < t_max));
                if hit {
                    return true;
                }
            } else {
                stack.push(node.start_or_right);
                stack.push(n + 1);
            }
        }
        false
    }
}

fn tri_bounds(t: &Triangle) -> Aabb {
    let mut b = Aabb::empty();
    for v in t.0 {
        b.grow(v);
    }
    b
}
