//! Wall solids: one per footprint edge per floor, mitred at the corners and
//! cut by rectangular openings.

use serde::{Deserialize, Serialize};

use super::error::BuildError;
use super::footprint::Footprint;
use super::object::{BimObject, ObjectKind};
use super::params::MaterialRef;
use super::tree::{BuildingNode, FloorNode, ObjectTree, TreePath, WallNode};
use crate::class::SemanticClass;
use crate::geom::{offset_polygon, quad, Segment3, Triangle, Vec2, Vec3};

/// Axis-aligned rectangle in a wall's (along-wall, floor-local height) frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpeningRect {
    pub u_min: f64,
    pub u_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl OpeningRect {
    fn overlaps(&self, o: &OpeningRect) -> bool {
        self.u_min < o.u_max && o.u_min < self.u_max && self.z_min < o.z_max && o.z_min < self.z_max
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    pub path: TreePath,
    /// Reference line at the floor's base elevation.
    pub line: Segment3,
    pub height: f64,
    pub thickness: f64,
    pub material: MaterialRef,
    /// Along-wall extent of the outer and inner faces after mitring.
    pub outer_range: (f64, f64),
    pub inner_range: (f64, f64),
    pub openings: Vec<OpeningRect>,
}

impl Wall {
    pub fn direction(&self) -> Vec3 {
        self.line.direction()
    }

    /// Horizontal unit normal pointing out of the building.
    pub fn outward(&self) -> Vec3 {
        self.direction().xy().right_normal().extend(0.0)
    }

    pub fn base_z(&self) -> f64 {
        self.line.start.z
    }

    /// Range along the wall where a full-depth opening can be cut.
    pub fn usable_range(&self) -> (f64, f64) {
        (
            self.outer_range.0.max(self.inner_range.0),
            self.outer_range.1.min(self.inner_range.1),
        )
    }

    /// Cut a rectangular opening. `part` only labels errors.
    pub fn add_opening(&mut self, rect: OpeningRect, part: &str) -> Result<(), BuildError> {
        if rect.z_max > self.height + 1e-12 {
            return Err(BuildError::PartTooTall {
                part: part.to_owned(),
                top: rect.z_max,
                wall_height: self.height,
            });
        }
        let (lo, hi) = self.usable_range();
        let fits = rect.u_min >= lo && rect.u_max <= hi && rect.z_min >= 0.0;
        if !fits || self.openings.iter().any(|o| o.overlaps(&rect)) {
            return Err(BuildError::PartTooWide {
                part: part.to_owned(),
                width: rect.u_max - rect.u_min,
                path: self.path,
            });
        }
        self.openings.push(rect);
        Ok(())
    }

    /// World-space point at along-wall `u`, outward offset `s`, floor-local height `z`.
    pub fn point(&self, u: f64, s: f64, z: f64) -> Vec3 {
        let local = self.local_point(u, s, z);
        local + Vec3::new(0.0, 0.0, self.base_z())
    }

    fn local_point(&self, u: f64, s: f64, z: f64) -> Vec3 {
        let origin = self.line.start.xy().extend(0.0);
        origin + self.direction() * u + self.outward() * s + Vec3::Z * z
    }

    /// Outer face, inner face and opening reveals. Tops, bottoms and the
    /// mitre caps are omitted: slabs, the ground and neighbouring walls
    /// cover them.
    pub fn mesh(&self) -> Vec<Triangle> {
        let half = self.thickness / 2.0;
        let mut local = Vec::new();
        self.face(&mut local, half, self.outer_range, true);
        self.face(&mut local, -half, self.inner_range, false);
        for o in &self.openings {
            let p = |u: f64, s: f64, z: f64| self.local_point(u, s, z);
            // Reveal normals face into the opening.
            local.extend(quad(
                p(o.u_min, half, o.z_min),
                p(o.u_min, -half, o.z_min),
                p(o.u_min, -half, o.z_max),
                p(o.u_min, half, o.z_max),
            ));
            local.extend(quad(
                p(o.u_max, -half, o.z_min),
                p(o.u_max, half, o.z_min),
                p(o.u_max, half, o.z_max),
                p(o.u_max, -half, o.z_max),
            ));
            local.extend(quad(
                p(o.u_min, -half, o.z_min),
                p(o.u_min, half, o.z_min),
                p(o.u_max, half, o.z_min),
                p(o.u_max, -half, o.z_min),
            ));
            local.extend(quad(
                p(o.u_min, half, o.z_max),
                p(o.u_min, -half, o.z_max),
                p(o.u_max, -half, o.z_max),
                p(o.u_max, half, o.z_max),
            ));
        }
        let lift = Vec3::new(0.0, 0.0, self.base_z());
        local.into_iter().map(|t| t.translated(lift)).collect()
    }

    /// Grid-decomposes one face around the openings.
    fn face(&self, out: &mut Vec<Triangle>, s: f64, range: (f64, f64), outward: bool) {
        let mut us = vec![range.0, range.1];
        let mut zs = vec![0.0, self.height];
        for o in &self.openings {
            us.extend([o.u_min, o.u_max]);
            zs.extend([o.z_min, o.z_max]);
        }
        for v in [&mut us, &mut zs] {
            v.sort_by(f64::total_cmp);
            v.dedup();
        }
        us.retain(|&u| u >= range.0 && u <= range.1);
        zs.retain(|&z| z >= 0.0 && z <= self.height);
        for uw in us.windows(2) {
            for zw in zs.windows(2) {
                let (um, zm) = ((uw[0] + uw[1]) / 2.0, (zw[0] + zw[1]) / 2.0);
                let in_hole = self
                    .openings
                    .iter()
                    .any(|o| um > o.u_min && um < o.u_max && zm > o.z_min && zm < o.z_max);
                if in_hole {
                    continue;
                }
                let a = self.local_point(uw[0], s, zw[0]);
                let b = self.local_point(uw[1], s, zw[0]);
                let c = self.local_point(uw[1], s, zw[1]);
                let d = self.local_point(uw[0], s, zw[1]);
                if outward {
                    out.extend(quad(a, b, c, d));
                } else {
                    out.extend(quad(a, d, c, b));
                }
            }
        }
    }

    pub fn to_object(&self) -> BimObject {
        BimObject::new(
            SemanticClass::Wall,
            ObjectKind::Wall,
            self.material.clone(),
            self.mesh(),
        )
        .with_path(self.path)
    }
}

/// Array the footprint's edges into walls for every floor. Floor `f` walls
/// are the floor-0 walls translated by `f * wall_height`.
pub fn generate_walls(
    footprint: &Footprint,
    floor_count: u32,
    wall_height: f64,
    wall_thickness: f64,
    material: &MaterialRef,
) -> Result<(Vec<Wall>, ObjectTree), BuildError> {
    let verts = footprint.vertices();
    let half = wall_thickness / 2.0;
    let outer = offset_polygon(verts, half).ok_or(BuildError::OffsetDegenerate {
        what: "outer wall face",
        distance: half,
    })?;
    let inner = offset_polygon(verts, -half).ok_or(BuildError::OffsetDegenerate {
        what: "inner wall face",
        distance: half,
    })?;

    let n = verts.len();
    let ground: Vec<Wall> = (0..n)
        .map(|i| {
            let (a, b) = footprint.edge(i);
            let dir = (b - a).normalized();
            let along = |p: Vec2| (p - a).dot(dir);
            Wall {
                path: TreePath::new(0, 0, i),
                line: Segment3::new(a.extend(0.0), b.extend(0.0)),
                height: wall_height,
                thickness: wall_thickness,
                material: material.clone(),
                outer_range: (along(outer[i]), along(outer[(i + 1) % n])),
                inner_range: (along(inner[i]), along(inner[(i + 1) % n])),
                openings: Vec::new(),
            }
        })
        .collect();

    let mut walls = Vec::with_capacity(n * floor_count as usize);
    let mut building = BuildingNode::default();
    for f in 0..floor_count as usize {
        let lift = Vec3::new(0.0, 0.0, f as f64 * wall_height);
        let mut floor = FloorNode::default();
        for w in &ground {
            let mut wall = w.clone();
            wall.path = TreePath::new(0, f, w.path.wall);
            wall.line = w.line.translated(lift);
            floor.walls.push(WallNode {
                line: wall.line,
                openings: Vec::new(),
            });
            walls.push(wall);
        }
        building.floors.push(floor);
    }
    let tree = ObjectTree {
        buildings: vec![building],
    };
    Ok((walls, tree))
}
