//! Door and window placement: cut the host wall, build the part geometry.

use super::error::BuildError;
use super::object::{BimObject, MeshPart, ObjectKind};
use super::openings::{compute_orientation_point, OpeningPoint, HOST_TOLERANCE};
use super::params::{
    CustomFenestration, GenerationParams, MaterialRef, PartKind, PartRef, ORIENTATION_DISTANCE,
    ORIENTATION_NUDGE,
};
use super::tree::ObjectTree;
use super::walls::{OpeningRect, Wall};
use crate::class::SemanticClass;
use crate::geom::{box_mesh, Vec3};

const FRAME_WIDTH: f64 = 0.06;
const FRAME_DEPTH: f64 = 0.08;
const DOOR_LEAF: f64 = 0.05;
const GLASS_DEPTH: f64 = 0.01;

/// Non-parametric materials used by fenestration parts.
#[derive(Debug, Clone)]
pub struct FenestrationMaterials {
    pub glass: MaterialRef,
    pub frame: MaterialRef,
    pub door: MaterialRef,
}

impl FenestrationMaterials {
    pub fn with_glass(glass: MaterialRef) -> Self {
        Self {
            glass,
            frame: MaterialRef::new("frame", [236, 234, 228]),
            door: MaterialRef::new("door", [112, 72, 44]),
        }
    }
}

/// Cut an opening for `part` at `point` in `wall` and return the part object.
pub fn place_one(
    wall: &mut Wall,
    point: crate::geom::Vec3,
    part: &PartRef,
    materials: &FenestrationMaterials,
) -> Result<BimObject, BuildError> {
    let class = match part.kind {
        PartKind::Door => SemanticClass::Door,
        PartKind::Window => SemanticClass::Window,
        PartKind::Pilaster => return Err(BuildError::NotAnOpening(part.id.clone())),
    };
    let orientation =
        compute_orientation_point(&wall.line, point, ORIENTATION_DISTANCE, ORIENTATION_NUDGE)?;
    let u = wall.line.arc_of(point);
    let rect = OpeningRect {
        u_min: u - part.width / 2.0,
        u_max: u + part.width / 2.0,
        z_min: part.sill,
        z_max: part.sill + part.height,
    };
    wall.add_opening(rect, &part.id)?;

    let dir = wall.direction();
    let out = wall.outward();
    let offset = orientation - point;
    let kind = ObjectKind::Fenestration {
        insertion: point,
        outward: out * offset.dot(out),
        opening_direction: dir * offset.dot(dir),
        part: part.id.clone(),
    };
    let parts = match class {
        SemanticClass::Door => vec![MeshPart {
            material: materials.door.clone(),
            triangles: slab_in_opening(wall, &rect, DOOR_LEAF),
        }],
        _ => window_parts(wall, &rect, materials),
    };
    Ok(BimObject {
        id: 0,
        class,
        kind,
        parts,
        tree_path: Some(wall.path),
    })
}

/// Box filling `rect` through `depth` metres centred on the wall plane.
fn slab_in_opening(wall: &Wall, r: &OpeningRect, depth: f64) -> Vec<crate::geom::Triangle> {
    wall_box(wall, r.u_min, r.u_max, r.z_min, r.z_max, depth)
}

fn wall_box(
    wall: &Wall,
    u0: f64,
    u1: f64,
    z0: f64,
    z1: f64,
    depth: f64,
) -> Vec<crate::geom::Triangle> {
    box_mesh(
        wall.point(u0, -depth / 2.0, z0),
        wall.direction() * (u1 - u0),
        wall.outward() * depth,
        Vec3::Z * (z1 - z0),
    )
}

fn window_parts(
    wall: &Wall,
    r: &OpeningRect,
    materials: &FenestrationMaterials,
) -> Vec<MeshPart> {
    let fw = FRAME_WIDTH
        .min((r.u_max - r.u_min) / 4.0)
        .min((r.z_max - r.z_min) / 4.0);
    let mut frame = Vec::new();
    frame.extend(wall_box(wall, r.u_min, r.u_min + fw, r.z_min, r.z_max, FRAME_DEPTH));
    frame.extend(wall_box(wall, r.u_max - fw, r.u_max, r.z_min, r.z_max, FRAME_DEPTH));
    frame.extend(wall_box(wall, r.u_min + fw, r.u_max - fw, r.z_min, r.z_min + fw, FRAME_DEPTH));
    frame.extend(wall_box(wall, r.u_min + fw, r.u_max - fw, r.z_max - fw, r.z_max, FRAME_DEPTH));
    let glass = wall_box(
        wall,
        r.u_min + fw,
        r.u_max - fw,
        r.z_min + fw,
        r.z_max - fw,
        GLASS_DEPTH,
    );
    vec![
        MeshPart {
            material: materials.frame.clone(),
            triangles: frame,
        },
        MeshPart {
            material: materials.glass.clone(),
            triangles: glass,
        },
    ]
}

fn wall_index(walls: &[Wall], p: &OpeningPoint) -> Result<usize, BuildError> {
    walls
        .iter()
        .position(|w| w.path == p.path && w.line.distance_to(p.position) <= HOST_TOLERANCE)
        .ok_or(BuildError::PointNotHosted(p.position))
}

/// Place every door and window point on its host wall.
pub fn place_fenestrations(
    walls: &mut [Wall],
    doors: &[OpeningPoint],
    windows: &[OpeningPoint],
    door_part: &PartRef,
    window_part: &PartRef,
    materials: &FenestrationMaterials,
) -> Result<Vec<BimObject>, BuildError> {
    let mut out = Vec::with_capacity(doors.len() + windows.len());
    for (points, part) in [(doors, door_part), (windows, window_part)] {
        for p in points {
            let i = wall_index(walls, p)?;
            out.push(place_one(&mut walls[i], p.position, part, materials)?);
        }
    }
    Ok(out)
}

/// Place manually listed fenestrations, bypassing the spacing layout. The
/// hosting wall is found by geometry and each point is recorded in `tree`.
pub fn apply_custom_fenestrations(
    walls: &mut [Wall],
    tree: &mut ObjectTree,
    custom: &[CustomFenestration],
    params: &GenerationParams,
    materials: &FenestrationMaterials,
) -> Result<Vec<BimObject>, BuildError> {
    if custom.is_empty() {
        return Err(BuildError::InvalidParam {
            field: "custom_fenestrations",
            reason: "must not be empty in custom fenestration mode".into(),
        });
    }
    let mut out = Vec::with_capacity(custom.len());
    for entry in custom {
        let part = params
            .find_part(&entry.part)
            .ok_or_else(|| BuildError::UnknownPart(entry.part.clone()))?;
        let raw = entry.position();
        let path = tree
            .host_of(raw, HOST_TOLERANCE)
            .ok_or(BuildError::PointNotHosted(raw))?;
        let node = tree.wall_mut(path).expect("host path comes from the tree");
        // Snap onto the reference line so the tree stays exact.
        let point = node.line.point_at(node.line.arc_of(raw));
        node.openings.push(point);
        let i = walls
            .iter()
            .position(|w| w.path == path)
            .ok_or(BuildError::PointNotHosted(raw))?;
        out.push(place_one(&mut walls[i], point, &part, materials)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::footprint::Footprint;
    use crate::building::tree::TreePath;
    use crate::building::walls::generate_walls;
    use crate::building::FenestrationMode;

    fn setup(floors: u32) -> (Vec<Wall>, ObjectTree, GenerationParams) {
        let fp = Footprint::rectangle(10.0, 10.0).unwrap();
        let mut params = GenerationParams::simple(fp.clone());
        params.floor_count = floors;
        let (walls, tree) =
            generate_walls(&fp, floors, 3.0, 0.3, &params.wall_material).unwrap();
        (walls, tree, params)
    }

    fn mats() -> FenestrationMaterials {
        FenestrationMaterials::with_glass(MaterialRef::glass())
    }

    fn point(path: TreePath, position: Vec3) -> OpeningPoint {
        OpeningPoint {
            path,
            index: 0,
            position,
        }
    }

    #[test]
    fn door_spans_floor_to_head() {
        let (mut walls, _, _) = setup(2);
        // Edge 0 of the centred square runs along +X at y = -5.
        let door = point(TreePath::new(0, 1, 0), Vec3::new(0.0, -5.0, 3.0));
        let objs = place_fenestrations(
            &mut walls,
            &[door],
            &[],
            &PartRef::standard_door(),
            &PartRef::standard_window(),
            &mats(),
        )
        .unwrap();
        assert_eq!(objs[0].class, SemanticClass::Door);
        let b = objs[0].bounds();
        assert!((b.min.z - 3.0).abs() < 1e-12 && (b.max.z - 5.1).abs() < 1e-12);
        let host = walls.iter().find(|w| w.path == door.path).unwrap();
        assert_eq!(host.openings.len(), 1);
        assert!((host.openings[0].z_max - 2.1).abs() < 1e-12);
    }

    #[test]
    fn window_has_glass_and_sill() {
        let (mut walls, _, _) = setup(1);
        let w = point(TreePath::new(0, 0, 0), Vec3::new(2.0, -5.0, 0.0));
        let objs = place_fenestrations(
            &mut walls,
            &[],
            &[w],
            &PartRef::standard_door(),
            &PartRef::standard_window(),
            &mats(),
        )
        .unwrap();
        let win = &objs[0];
        assert_eq!(win.class, SemanticClass::Window);
        assert!(win.parts.iter().any(|p| p.material.is_glass()));
        let b = win.bounds();
        assert!((b.min.z - 0.9).abs() < 1e-12 && (b.max.z - 2.3).abs() < 1e-12);
        match &win.kind {
            ObjectKind::Fenestration {
                outward,
                opening_direction,
                ..
            } => {
                assert!(outward.y < 0.0);
                assert!((opening_direction.x - ORIENTATION_NUDGE).abs() < 1e-15);
            }
            k => panic!("unexpected {k:?}"),
        }
    }

    #[test]
    fn off_line_point_rejected() {
        let (mut walls, _, _) = setup(1);
        let w = point(TreePath::new(0, 0, 0), Vec3::new(2.0, -5.001, 0.0));
        let err = place_fenestrations(
            &mut walls,
            &[],
            &[w],
            &PartRef::standard_door(),
            &PartRef::standard_window(),
            &mats(),
        )
        .unwrap_err();
        assert!(matches!(err, BuildError::PointNotHosted(_)));
    }

    #[test]
    fn custom_list_places_exactly_listed() {
        let (mut walls, mut tree, mut params) = setup(1);
        params.fenestration_mode = FenestrationMode::Custom;
        params.custom_fenestrations = vec![
            CustomFenestration::new(Vec3::new(-2.0, -5.0, 0.0), "window"),
            CustomFenestration::new(Vec3::new(5.0, 1.0, 0.0), "door"),
        ];
        let objs = apply_custom_fenestrations(
            &mut walls,
            &mut tree,
            &params.custom_fenestrations,
            &params,
            &mats(),
        )
        .unwrap();
        assert_eq!(objs.len(), 2);
        assert_eq!(objs[0].class, SemanticClass::Window);
        assert_eq!(objs[1].class, SemanticClass::Door);
        assert_eq!(objs[1].tree_path, Some(TreePath::new(0, 0, 1)));
        assert!(tree.is_consistent());
    }

    #[test]
    fn custom_errors() {
        let (mut walls, mut tree, params) = setup(1);
        assert!(apply_custom_fenestrations(&mut walls, &mut tree, &[], &params, &mats()).is_err());
        let unknown = [CustomFenestration::new(Vec3::new(0.0, -5.0, 0.0), "oriel")];
        assert!(matches!(
            apply_custom_fenestrations(&mut walls, &mut tree, &unknown, &params, &mats()),
            Err(BuildError::UnknownPart(_))
        ));
        let floating = [CustomFenestration::new(Vec3::new(0.0, 0.0, 0.0), "window")];
        assert!(matches!(
            apply_custom_fenestrations(&mut walls, &mut tree, &floating, &params, &mats()),
            Err(BuildError::PointNotHosted(_))
        ));
    }
}
