//! Architectural details: corner quoins, swept cornices, pilasters.

use super::error::BuildError;
use super::object::{BimObject, MeshPart, ObjectKind};
use super::params::{MaterialRef, PartRef, QuoinStyle};
use super::tree::TreePath;
use super::walls::Wall;
use crate::class::SemanticClass;
use crate::geom::{
    box_mesh, mesh_volume, offset_vertex, polygon_self_intersects, signed_area, triangulate,
    Triangle, Vec2, Vec3,
};

const COURSE: f64 = 0.30;
const MORTAR_JOINT: f64 = 0.02;
const STONE_DEPTH: f64 = 0.06;
const MORTAR_SETBACK: f64 = 0.01;

/// Quoin rotation in degrees for a corner whose edges leave the vertex along
/// unit vectors `a` and `b`.
///
/// `x` is the angle between +X and `a + b`, negative when the bisector
/// points into negative Y. Positive `x` maps to `x - 45`, anything else to
/// `|x| - 225`.
pub fn quoin_rotation_angle(a: Vec2, b: Vec2) -> Result<f64, BuildError> {
    let u = a + b;
    let len = u.length();
    if len < 1e-12 {
        return Err(BuildError::StraightCorner);
    }
    let i_hat = Vec2::new(1.0, 0.0);
    let unsigned = (i_hat.dot(u) / len).clamp(-1.0, 1.0).acos().to_degrees();
    let x = if i_hat.cross(u) < 0.0 {
        -unsigned
    } else {
        unsigned
    };
    Ok(if x > 0.0 { x - 45.0 } else { x.abs() - 225.0 })
}

/// Directions leaving vertex `i` of a closed polygon, towards the previous
/// and the next vertex.
pub fn corner_edges(pts: &[Vec2], i: usize) -> (Vec2, Vec2) {
    let n = pts.len();
    let cur = pts[i];
    let a = (pts[(i + n - 1) % n] - cur).normalized();
    let b = (pts[(i + 1) % n] - cur).normalized();
    (a, b)
}

/// One two-faced quoin per corner of `outline` (the outward-offset wall
/// polyline). Each face lies in the plane of one adjacent wall face with its
/// normal pointing out of the building. Straight-through vertices get none.
pub fn generate_quoins(
    outline: &[Vec2],
    total_height: f64,
    style: Option<QuoinStyle>,
    stone: &MaterialRef,
    mortar: &MaterialRef,
    seed: u64,
) -> Vec<BimObject> {
    let Some(style) = style else {
        return Vec::new();
    };
    let courses = (total_height / COURSE).floor() as usize;
    let mut out = Vec::new();
    for i in 0..outline.len() {
        let (a, b) = corner_edges(outline, i);
        let Ok(rotation) = quoin_rotation_angle(a, b) else {
            continue;
        };
        let v = outline[i];
        // Inward normals of the two walls meeting here.
        let in_a = a.right_normal();
        let in_b = -b.right_normal();
        let arm = |origin: Vec3, along: Vec2, inward: Vec2, len: f64, depth: f64, h: f64| {
            box_mesh(
                origin,
                along.extend(0.0) * len,
                inward.extend(0.0) * depth,
                Vec3::Z * h,
            )
        };
        let mut stones = Vec::new();
        for k in 0..courses {
            let z = k as f64 * COURSE;
            let origin = v.extend(z);
            let (la, lb) = match style {
                QuoinStyle::Block => (0.4, 0.4),
                QuoinStyle::Alternating if (k as u64 + seed).is_multiple_of(2) => (0.5, 0.25),
                QuoinStyle::Alternating => (0.25, 0.5),
            };
            let h = COURSE - MORTAR_JOINT;
            stones.extend(arm(origin, a, in_a, la, STONE_DEPTH, h));
            stones.extend(arm(origin, b, in_b, lb, STONE_DEPTH, h));
        }
        // Mortar backing, set back from the stone faces so it shows in the joints.
        let height = courses as f64 * COURSE;
        let mut joints = Vec::new();
        for (along, inward) in [(a, in_a), (b, in_b)] {
            joints.extend(arm(
                (v + inward * MORTAR_SETBACK).extend(0.0),
                along,
                inward,
                0.5,
                STONE_DEPTH - MORTAR_SETBACK,
                height,
            ));
        }
        out.push(BimObject {
            id: 0,
            class: SemanticClass::Wall,
            kind: ObjectKind::Quoin {
                vertex: i,
                rotation_deg: rotation,
            },
            parts: vec![
                MeshPart {
                    material: stone.clone(),
                    triangles: stones,
                },
                MeshPart {
                    material: mortar.clone(),
                    triangles: joints,
                },
            ],
            tree_path: None,
        });
    }
    out
}

/// Sweep `profile` (x outward from the path, y up) along `path` at
/// elevation `z_base`, mitring every interior corner. Open paths are capped.
pub fn sweep_profile(
    path: &[Vec2],
    closed: bool,
    z_base: f64,
    profile: &[Vec2],
) -> Result<Vec<Triangle>, BuildError> {
    if profile.len() < 3 || signed_area(profile) == 0.0 || polygon_self_intersects(profile) {
        return Err(BuildError::BadProfile);
    }
    let mut profile = profile.to_vec();
    if signed_area(&profile) < 0.0 {
        profile.reverse();
    }
    let n = path.len();
    let miter = |i: usize| -> Vec2 {
        let has_prev = closed || i > 0;
        let has_next = closed || i + 1 < n;
        match (has_prev, has_next) {
            (true, true) => {
                let prev = path[(i + n - 1) % n];
                let next = path[(i + 1) % n];
                offset_vertex(prev, path[i], next, 1.0) - path[i]
            }
            (false, _) => (path[1] - path[0]).normalized().right_normal(),
            (_, false) => (path[n - 1] - path[n - 2]).normalized().right_normal(),
        }
    };
    let rings: Vec<Vec<Vec3>> = (0..n)
        .map(|i| {
            let m = miter(i);
            profile
                .iter()
                .map(|p| (path[i] + m * p.x).extend(z_base + p.y))
                .collect()
        })
        .collect();
    let segs = if closed { n } else { n - 1 };
    let m = profile.len();
    let mut tris = Vec::new();
    for s in 0..segs {
        let (r0, r1) = (&rings[s], &rings[(s + 1) % n]);
        for j in 0..m {
            let k = (j + 1) % m;
            tris.push(Triangle::new(r0[j], r1[j], r1[k]));
            tris.push(Triangle::new(r0[j], r1[k], r0[k]));
        }
    }
    if !closed {
        for [a, b, c] in triangulate(&profile) {
            let first = &rings[0];
            let last = &rings[n - 1];
            tris.push(Triangle::new(first[a], first[b], first[c]));
            tris.push(Triangle::new(last[a], last[c], last[b]));
        }
    }
    // Winding depends on which way the path turns; make it outward.
    if mesh_volume(&tris) < 0.0 {
        for t in &mut tris {
            t.0.swap(1, 2);
        }
    }
    Ok(tris)
}

/// Cornice along the closed detail polyline.
pub fn generate_cornices(
    outline: &[Vec2],
    z_base: f64,
    profile: Option<&[Vec2]>,
    material: &MaterialRef,
) -> Result<Vec<BimObject>, BuildError> {
    let Some(profile) = profile else {
        return Ok(Vec::new());
    };
    let tris = sweep_profile(outline, true, z_base, profile)?;
    Ok(vec![BimObject::new(
        SemanticClass::Wall,
        ObjectKind::Cornice,
        material.clone(),
        tris,
    )])
}

/// One pilaster per division point, full floor height, standing proud of
/// the wall's outer face by the part depth.
pub fn generate_pilasters(
    walls: &[Wall],
    division_points: &[(TreePath, Vec<Vec3>)],
    enabled: bool,
    part: &PartRef,
    material: &MaterialRef,
) -> Vec<BimObject> {
    if !enabled {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (path, points) in division_points {
        let Some(wall) = walls.iter().find(|w| w.path == *path) else {
            continue;
        };
        for &p in points {
            let u = wall.line.arc_of(p);
            let origin = wall.point(u - part.width / 2.0, wall.thickness / 2.0, 0.0);
            let tris = box_mesh(
                origin,
                wall.direction() * part.width,
                wall.outward() * part.depth,
                Vec3::Z * wall.height,
            );
            out.push(
                BimObject::new(
                    SemanticClass::Column,
                    ObjectKind::Pilaster { position: p },
                    material.clone(),
                    tris,
                )
                .with_path(*path),
            );
        }
    }
    out
}
