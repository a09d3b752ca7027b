//! Independent reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's metric code.

#![allow(dead_code)]

use facade_synth::building::Footprint;
use facade_synth::geom::Vec2;
use rand::Rng;

pub const CLASSES: usize = 6;

/// (tp, tn, fp, fn) for `class`, one pixel at a time.
pub fn brute_counts(pred: &[u8], truth: &[u8], class: u8) -> [u64; 4] {
    let mut c = [0u64; 4];
    for i in 0..pred.len() {
        let p = pred[i] == class;
        let t = truth[i] == class;
        match (p, t) {
            (true, true) => c[0] += 1,
            (false, false) => c[1] += 1,
            (true, false) => c[2] += 1,
            (false, true) => c[3] += 1,
        }
    }
    c
}

/// Exact non-negative rational; 0/0 is carried as-is so callers apply
/// their own convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: u128,
    pub den: u128,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Self {
        Self {
            num: num as u128,
            den: den as u128,
        }
    }

    pub fn or_one(self) -> Self {
        if self.den == 0 {
            Self { num: 1, den: 1 }
        } else {
            self
        }
    }

    pub fn value(self) -> f64 {
        let g = gcd(self.num, self.den);
        (self.num / g) as f64 / (self.den / g) as f64
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// (accuracy, precision, recall, f1, iou) straight from the definitions,
/// with F1 as the harmonic mean of exact precision and recall.
pub fn brute_metrics(c: [u64; 4]) -> (f64, f64, f64, f64, Option<f64>) {
    let [tp, tn, fp, fn_] = c;
    let acc = Frac::new(tp + tn, tp + tn + fp + fn_).or_one();
    let p = Frac::new(tp, tp + fp).or_one();
    let r = Frac::new(tp, tp + fn_).or_one();
    // 2PR / (P + R) over a common denominator; 0 when both are 0.
    let f1_den = p.num * r.den + r.num * p.den;
    let f1 = if f1_den == 0 {
        0.0
    } else {
        Frac {
            num: 2 * p.num * r.num,
            den: f1_den,
        }
        .value()
    };
    let iou = (tp + fp + fn_ > 0).then(|| Frac::new(tp, tp + fp + fn_).value());
    (acc.value(), p.value(), r.value(), f1, iou)
}

/// Per-image score in percent: recall, or 100 when the class appears in
/// neither map.
pub fn brute_image_score(c: [u64; 4]) -> f64 {
    let [tp, _, fp, fn_] = c;
    if tp + fp + fn_ == 0 {
        100.0
    } else {
        100.0 * Frac::new(tp, tp + fn_).or_one().value()
    }
}

pub fn random_map(rng: &mut impl Rng, len: usize, classes: u8) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..classes)).collect()
}

/// Convex polygon: points on an ellipse at sorted angles at least
/// `min_gap_deg` apart.
pub fn random_convex_footprint(rng: &mut impl Rng) -> Footprint {
    loop {
        let n = rng.random_range(3..=9);
        let rx = rng.random_range(6.0..16.0);
        let ry = rng.random_range(6.0..16.0);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let min_gap = 25f64.to_radians();
        let ok = angles.windows(2).all(|w| w[1] - w[0] >= min_gap)
            && angles[0] + std::f64::consts::TAU - angles[n - 1] >= min_gap;
        if !ok {
            continue;
        }
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|a| Vec2::new(rx * (a + phase).cos(), ry * (a + phase).sin()))
            .collect();
        if let Ok(fp) = Footprint::normalize(&pts) {
            if fp.is_convex() {
                return fp;
            }
        }
    }
}

/// Angle between two vectors in radians, robust near zero.
pub fn angle_between(a: facade_synth::geom::Vec3, b: facade_synth::geom::Vec3) -> f64 {
    a.cross(b).length().atan2(a.dot(b))
}

/// Quoin placement on a convex footprint. Every corner must carry a quoin
/// with a face in each adjacent exterior wall plane whose normal matches
/// that wall's outward normal to within `tol_rad`, and every other face
/// must be axis-aligned to one of the two walls or vertical.
pub fn check_quoins(fp: &Footprint, seed: u64, tol_rad: f64) -> Result<(), String> {
    use facade_synth::building::{generate_building, GenerationParams, ObjectKind, QuoinStyle};
    use facade_synth::geom::Vec3;

    let mut p = GenerationParams::simple(fp.clone());
    p.quoin_style = Some(QuoinStyle::Block);
    p.seed = seed;
    let model = generate_building(&p).map_err(|e| format!("build failed: {e}"))?;
    let face = p.wall_thickness / 2.0 + facade_synth::building::DETAIL_OFFSET;
    let v = fp.vertices();
    let n = v.len();
    // Outward normal of the counter-clockwise edge p -> q.
    let outward = |p: Vec2, q: Vec2| {
        let d = q - p;
        let len = (d.x * d.x + d.y * d.y).sqrt();
        Vec3::new(d.y / len, -d.x / len, 0.0)
    };
    let mut seen = vec![false; n];
    for obj in &model.objects {
        let ObjectKind::Quoin { vertex, .. } = obj.kind else {
            continue;
        };
        if vertex >= n {
            return Err(format!("quoin vertex {vertex} out of range"));
        }
        seen[vertex] = true;
        let corner = v[vertex];
        let walls = [
            (v[(vertex + n - 1) % n], corner),
            (corner, v[(vertex + 1) % n]),
        ];
        let normals: Vec<Vec3> = walls.iter().map(|&(a, b)| outward(a, b)).collect();
        let tangents: Vec<Vec3> = normals.iter().map(|m| Vec3::Z.cross(*m)).collect();
        let tris: Vec<_> = obj.triangles().collect();
        for (k, m) in normals.iter().enumerate() {
            let on_plane = tris.iter().any(|t| {
                let in_plane = t.0.iter().all(|q| {
                    let rel = Vec3::new(q.x - corner.x, q.y - corner.y, 0.0);
                    (rel.dot(*m) - face).abs() < 1e-9
                });
                in_plane && angle_between(t.normal(), *m) < tol_rad
            });
            if !on_plane {
                return Err(format!("vertex {vertex}: no face on wall {k} plane"));
            }
        }
        let mut allowed = vec![Vec3::Z, -Vec3::Z];
        for d in normals.iter().chain(&tangents) {
            allowed.push(*d);
            allowed.push(-*d);
        }
        for t in &tris {
            let nn = t.normal();
            if !allowed.iter().any(|a| angle_between(nn, *a) < tol_rad) {
                return Err(format!("vertex {vertex}: stray face normal {nn:?}"));
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(format!("vertex {i} has no quoin")),
        None => Ok(()),
    }
}

/// Opening layout on a straight edge against an independent construction:
/// `k` is the largest count with `k * s <= L`, insertion points sit at
/// `m + s (i + 1/2)` and division points at `m + s i` with `m = (L - k s)/2`.
pub fn check_layout(
    origin: facade_synth::geom::Vec3,
    dir_deg: f64,
    length: f64,
    spacing: f64,
    tol: f64,
) -> Result<(), String> {
    use facade_synth::building::compute_opening_points;
    use facade_synth::geom::{Segment3, Vec3};

    let d = Vec3::new(dir_deg.to_radians().cos(), dir_deg.to_radians().sin(), 0.0);
    let edge = Segment3::new(origin, origin + d * length);
    let layout = compute_opening_points(&edge, spacing);
    let mut k = 0usize;
    while (k + 1) as f64 * spacing <= length {
        k += 1;
    }
    if layout.insertion.len() != k {
        return Err(format!(
            "L={length} s={spacing}: {} insertions, expected {k}",
            layout.insertion.len()
        ));
    }
    if k == 0 {
        return layout
            .division
            .is_empty()
            .then_some(())
            .ok_or_else(|| "divisions without insertions".into());
    }
    if layout.division.len() != k + 1 {
        return Err(format!("{} divisions for {k} insertions", layout.division.len()));
    }
    let arc = |p: Vec3| (p - origin).dot(d);
    let off = |p: Vec3| ((p - origin) - d * arc(p)).length();
    let margin = (length - k as f64 * spacing) / 2.0;
    for (i, p) in layout.insertion.iter().enumerate() {
        let want = margin + spacing * (i as f64 + 0.5);
        if (arc(*p) - want).abs() > tol || off(*p) > tol {
            return Err(format!("insertion {i} at {} expected {want}", arc(*p)));
        }
    }
    for (i, p) in layout.division.iter().enumerate() {
        let want = margin + spacing * i as f64;
        if (arc(*p) - want).abs() > tol || off(*p) > tol {
            return Err(format!("division {i} at {} expected {want}", arc(*p)));
        }
    }
    let ins: Vec<f64> = layout.insertion.iter().map(|p| arc(*p)).collect();
    if ins.windows(2).any(|w| ((w[1] - w[0]) - spacing).abs() > tol) {
        return Err("uneven insertion spacing".into());
    }
    let head = arc(layout.division[0]);
    let tail = length - arc(layout.division[k]);
    if (head - tail).abs() > tol {
        return Err(format!("end margins {head} and {tail} differ"));
    }
    Ok(())
}
