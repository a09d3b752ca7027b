//! Small vector and polygon toolkit shared by the generator and the renderer.
//!
//! Everything is `f64`; the building kernel asserts invariants at the
//! nanometre scale, so single precision is not an option.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// Z component of the 3D cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        self / self.length()
    }

    /// Clockwise perpendicular. For a counter-clockwise polygon this is the
    /// outward normal of an edge running along `self`.
    pub fn right_normal(self) -> Self {
        Self::new(self.y, -self.x)
    }

    pub fn extend(self, z: f64) -> Vec3 {
        Vec3::new(self.x, self.y, z)
    }
}

impl Vec3 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        self / self.length()
    }

    pub fn xy(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn min(self, o: Self) -> Self {
        Self::new(self.x.min(o.x), self.y.min(o.y), self.z.min(o.z))
    }

    pub fn max(self, o: Self) -> Self {
        Self::new(self.x.max(o.x), self.y.max(o.y), self.z.max(o.z))
    }

    pub fn axis(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    /// Reflect `self` about a plane with unit normal `n`.
    pub fn reflect(self, n: Self) -> Self {
        self - n * (2.0 * self.dot(n))
    }
}

macro_rules! impl_ops {
    ($t:ident { $($f:ident),+ }) => {
        impl Add for $t {
            type Output = Self;
            fn add(self, o: Self) -> Self { Self { $($f: self.$f + o.$f),+ } }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, o: Self) { $(self.$f += o.$f;)+ }
        }
        impl Sub for $t {
            type Output = Self;
            fn sub(self, o: Self) -> Self { Self { $($f: self.$f - o.$f),+ } }
        }
        impl Mul<f64> for $t {
            type Output = Self;
            fn mul(self, s: f64) -> Self { Self { $($f: self.$f * s),+ } }
        }
        impl Div<f64> for $t {
            type Output = Self;
            fn div(self, s: f64) -> Self { Self { $($f: self.$f / s),+ } }
        }
        impl Neg for $t {
            type Output = Self;
            fn neg(self) -> Self { Self { $($f: -self.$f),+ } }
        }
    };
}

impl_ops!(Vec2 { x, y });
impl_ops!(Vec3 { x, y, z });

/// A straight segment in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment3 {
    pub start: Vec3,
    pub end: Vec3,
}

impl Segment3 {
    pub fn new(start: Vec3, end: Vec3) -> Self {
        Self { start, end }
    }

    pub fn length(&self) -> f64 {
        (self.end - self.start).length()
    }

    pub fn direction(&self) -> Vec3 {
        (self.end - self.start).normalized()
    }

    pub fn point_at(&self, arc: f64) -> Vec3 {
        self.start + self.direction() * arc
    }

    pub fn translated(&self, by: Vec3) -> Self {
        Self::new(self.start + by, self.end + by)
    }

    /// Euclidean distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Vec3) -> f64 {
        let d = self.end - self.start;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return (p - self.start).length();
        }
        let t = ((p - self.start).dot(d) / len2).clamp(0.0, 1.0);
        (p - (self.start + d * t)).length()
    }

    /// Arc-length parameter of the orthogonal projection of `p`.
    pub fn arc_of(&self, p: Vec3) -> f64 {
        (p - self.start).dot(self.direction())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn empty() -> Self {
        Self {
            min: Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            max: Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.min.x > self.max.x || self.min.y > self.max.y || self.min.z > self.max.z
    }

    pub fn grow(&mut self, p: Vec3) {
        self.min = self.min.min(p);
        self.max = self.max.max(p);
    }

    pub fn union(&self, o: &Aabb) -> Aabb {
        Aabb {
            min: self.min.min(o.min),
            max: self.max.max(o.max),
        }
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    pub fn extent(&self) -> Vec3 {
        self.max - self.min
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.min.x
            && p.y >= self.min.y
            && p.z >= self.min.z
            && p.x <= self.max.x
            && p.y <= self.max.y
            && p.z <= self.max.z
    }

    /// Slab test; returns the entry distance when the ray hits within `t_max`.
    pub fn hit(&self, origin: Vec3, inv_dir: Vec3, t_max: f64) -> Option<f64> {
        let mut t0: f64 = 0.0;
        let mut t1 = t_max;
        for i in 0..3 {
            let o = origin.axis(i);
            let inv = inv_dir.axis(i);
            let mut near = (self.min.axis(i) - o) * inv;
            let mut far = (self.max.axis(i) - o) * inv;
            if near > far {
                std::mem::swap(&mut near, &mut far);
            }
            // NaN from 0 * inf must not shrink the interval.
            if near.is_nan() || far.is_nan() {
                continue;
            }
            t0 = t0.max(near);
            t1 = t1.min(far);
            if t0 > t1 {
                return None;
            }
        }
        Some(t0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle(pub [Vec3; 3]);

impl Triangle {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Self {
        Self([a, b, c])
    }

    /// Unnormalized normal following the winding.
    pub fn raw_normal(&self) -> Vec3 {
        let [a, b, c] = self.0;
        (b - a).cross(c - a)
    }

    pub fn normal(&self) -> Vec3 {
        self.raw_normal().normalized()
    }

    pub fn area(&self) -> f64 {
        self.raw_normal().length() * 0.5
    }

    pub fn centroid(&self) -> Vec3 {
        let [a, b, c] = self.0;
        (a + b + c) / 3.0
    }

    pub fn translated(&self, by: Vec3) -> Self {
        let [a, b, c] = self.0;
        Self([a + by, b + by, c + by])
    }

    /// Möller–Trumbore. Returns the hit distance along `dir`.
    pub fn intersect(&self, origin: Vec3, dir: Vec3) -> Option<f64> {
        const EPS: f64 = 1e-12;
        let [a, b, c] = self.0;
        let e1 = b - a;
        let e2 = c - a;
        let p = dir.cross(e2);
        let det = e1.dot(p);
        if det.abs() < EPS {
            return None;
        }
        let inv = 1.0 / det;
        let s = origin - a;
        let u = s.dot(p) * inv;
        if !(0.0..=1.0).contains(&u) {
            return None;
        }
        let q = s.cross(e1);
        let v = dir.dot(q) * inv;
        if v < 0.0 || u + v > 1.0 {
            return None;
        }
        let t = e2.dot(q) * inv;
        (t > EPS).then_some(t)
    }
}

/// Signed volume enclosed by a closed, consistently wound triangle mesh.
pub fn mesh_volume(tris: &[Triangle]) -> f64 {
    tris.iter()
        .map(|t| {
            let [a, b, c] = t.0;
            a.dot(b.cross(c)) / 6.0
        })
        .sum()
}

/// Twice the signed area (positive for counter-clockwise).
pub fn signed_area(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    let twice: f64 = (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum();
    twice * 0.5
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, including touching and collinear overlap.
pub fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// True when any two non-adjacent edges of the closed polygon touch, or
/// adjacent edges fold back onto each other.
pub fn polygon_self_intersects(pts: &[Vec2]) -> bool {
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Shared vertex is fine; overlapping collinear back-tracking is not.
                let shared = if j == i + 1 { b } else { a };
                let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                let u = p - shared;
                let v = q - shared;
                if u.cross(v) == 0.0 && u.dot(v) > 0.0 {
                    return true;
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

/// Miter offset of a closed counter-clockwise polygon. Positive `distance`
/// moves every edge outward along its right-hand normal.
///
/// Returns `None` when an edge flips direction or the result self-intersects.
pub fn offset_polygon(pts: &[Vec2], distance: f64) -> Option<Vec<Vec2>> {
    let n = pts.len();
    let out: Vec<Vec2> = (0..n)
        .map(|i| {
            let prev = pts[(i + n - 1) % n];
            let cur = pts[i];
            let next = pts[(i + 1) % n];
            offset_vertex(prev, cur, next, distance)
        })
        .collect();
    for i in 0..n {
        let a = pts[(i + 1) % n] - pts[i];
        let b = out[(i + 1) % n] - out[i];
        if a.dot(b) <= 0.0 {
            return None;
        }
    }
    if polygon_self_intersects(&out) || signed_area(&out) <= 0.0 {
        return None;
    }
    Some(out)
}

/// Intersection of the two offset lines meeting at `cur`.
pub fn offset_vertex(prev: Vec2, cur: Vec2, next: Vec2, distance: f64) -> Vec2 {
    let d0 = (cur - prev).normalized();
    let d1 = (next - cur).normalized();
    let n0 = d0.right_normal();
    let n1 = d1.right_normal();
    let denom = d0.cross(d1);
    if denom.abs() < 1e-12 {
        return cur + n0 * distance;
    }
    // Solve (cur + n0 d) + s d0 = (cur + n1 d) + t d1 for the shared point.
    let p0 = cur + n0 * distance;
    let p1 = cur + n1 * distance;
    let s = (p1 - p0).cross(d1) / denom;
    p0 + d0 * s
}

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
/// Returns index triples wound counter-clockwise.
pub fn triangulate(pts: &[Vec2]) -> Vec<[usize; 3]> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::with_capacity(pts.len().saturating_sub(2));
    let mut guard = 0;
    while idx.len() > 3 && guard < pts.len() * pts.len() {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let ia = idx[(k + m - 1) % m];
            let ib = idx[k];
            let ic = idx[(k + 1) % m];
            let (a, b, c) = (pts[ia], pts[ib], pts[ic]);
            if orient(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                if j == ia || j == ib || j == ic {
                    return false;
                }
                let p = pts[j];
                orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0
            });
            if blocked {
                continue;
            }
            out.push([ia, ib, ic]);
            idx.remove(k);
            clipped = true;
            break;
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        out.push([idx[0], idx[1], idx[2]]);
    }
    out
}

/// Oriented box given by a corner, three edge vectors (right-handed), and
/// outward-facing triangles.
pub fn box_mesh(origin: Vec3, u: Vec3, v: Vec3, w: Vec3) -> Vec<Triangle> {
    let c = |a: f64, b: f64, d: f64| origin + u * a + v * b + w * d;
    let p = [
        c(0.0, 0.0, 0.0),
        c(1.0, 0.0, 0.0),
        c(1.0, 1.0, 0.0),
        c(0.0, 1.0, 0.0),
        c(0.0, 0.0, 1.0),
        c(1.0, 0.0, 1.0),
        c(1.0, 1.0, 1.0),
        c(0.0, 1.0, 1.0),
    ];
    let quads = [
        [0, 3, 2, 1], // -w
        [4, 5, 6, 7], // +w
        [0, 1, 5, 4], // -v
        [2, 3, 7, 6], // +v
        [1, 2, 6, 5], // +u
        [0, 4, 7, 3], // -u
    ];
    let mut tris = Vec::with_capacity(12);
    let flip = u.cross(v).dot(w) < 0.0;
    for q in quads {
        let (a, b, cc, d) = (p[q[0]], p[q[1]], p[q[2]], p[q[3]]);
        if flip {
            tris.push(Triangle::new(a, cc, b));
            tris.push(Triangle::new(a, d, cc));
        } else {
            tris.push(Triangle::new(a, b, cc));
            tris.push(Triangle::new(a, cc, d));
        }
    }
    tris
}

/// Two triangles for the planar quad `a b c d` (in winding order).
pub fn quad(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> [Triangle; 2] {
    [Triangle::new(a, b, c), Triangle::new(a, c, d)]
}
