use super::error::BuildError;
use super::footprint::Footprint;
use super::object::{BimObject, ObjectKind};
use super::params::MaterialRef;
use crate::class::SemanticClass;
use crate::geom::{offset_polygon, quad, triangulate, Triangle, Vec2};

/// Closed prism over a counter-clockwise outline between `z0` and `z1`.
pub fn extrude_polygon(outline: &[Vec2], z0: f64, z1: f64) -> Vec<Triangle> {
    let mut tris = Vec::new();
    for [a, b, c] in triangulate(outline) {
        let (a, b, c) = (outline[a], outline[b], outline[c]);
        tris.push(Triangle::new(a.extend(z1), b.extend(z1), c.extend(z1)));
        tris.push(Triangle::new(a.extend(z0), c.extend(z0), b.extend(z0)));
    }
    let n = outline.len();
    for i in 0..n {
        let (a, b) = (outline[i], outline[(i + 1) % n]);
        tris.extend(quad(a.extend(z0), b.extend(z0), b.extend(z1), a.extend(z1)));
    }
    tris
}

/// One slab per floor with its top face at `(f + 1) * wall_height`, traced
/// from the footprint pushed out by `outward_offset`. The topmost slab is the
/// roof; the others count as wall.
pub fn generate_slabs_and_roof(
    footprint: &Footprint,
    floor_count: u32,
    wall_height: f64,
    slab_thickness: f64,
    outward_offset: f64,
    roof_material: &MaterialRef,
) -> Result<Vec<BimObject>, BuildError> {
    if outward_offset.is_nan() || outward_offset <= 0.0 {
        return Err(BuildError::InvalidParam {
            field: "outward_offset",
            reason: format!("slab offset must be positive, got {outward_offset}"),
        });
    }
    let outline = offset_polygon(footprint.vertices(), outward_offset).ok_or(
        BuildError::OffsetDegenerate {
            what: "slab",
            distance: outward_offset,
        },
    )?;
    Ok((0..floor_count as usize)
        .map(|f| {
            let top = (f + 1) as f64 * wall_height;
            let class = if f + 1 == floor_count as usize {
                SemanticClass::Roof
            } else {
                SemanticClass::Wall
            };
            BimObject::new(
                class,
                ObjectKind::Slab { floor: f },
                roof_material.clone(),
                extrude_polygon(&outline, top - slab_thickness, top),
            )
        })
        .collect())
}
