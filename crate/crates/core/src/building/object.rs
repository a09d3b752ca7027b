use serde::{Deserialize, Serialize};

use super::params::MaterialRef;
use super::tree::TreePath;
use crate::class::SemanticClass;
use crate::geom::{Aabb, Triangle, Vec3};

/// Triangles sharing one material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshPart {
    pub material: MaterialRef,
    pub triangles: Vec<Triangle>,
}

/// What produced an object, plus any placement data worth keeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectKind {
    Wall,
    Slab {
        floor: usize,
    },
    Fenestration {
        insertion: Vec3,
        outward: Vec3,
        opening_direction: Vec3,
        part: String,
    },
    Quoin {
        vertex: usize,
        rotation_deg: f64,
    },
    Cornice,
    Pilaster {
        position: Vec3,
    },
}

impl ObjectKind {
    pub fn label(&self) -> &'static str {
        match self {
            ObjectKind::Wall => "wall",
            ObjectKind::Slab { .. } => "slab",
            ObjectKind::Fenestration { .. } => "fenestration",
            ObjectKind::Quoin { .. } => "quoin",
            ObjectKind::Cornice => "cornice",
            ObjectKind::Pilaster { .. } => "pilaster",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BimObject {
    pub id: u32,
    pub class: SemanticClass,
    pub kind: ObjectKind,
    pub parts: Vec<MeshPart>,
    pub tree_path: Option<TreePath>,
}

impl BimObject {
    pub fn new(
        class: SemanticClass,
        kind: ObjectKind,
        material: MaterialRef,
        triangles: Vec<Triangle>,
    ) -> Self {
        Self {
            id: 0,
            class,
            kind,
            parts: vec![MeshPart {
                material,
                triangles,
            }],
            tree_path: None,
        }
    }

    pub fn with_path(mut self, path: TreePath) -> Self {
        self.tree_path = Some(path);
        self
    }

    /// The material of the first (primary) part.
    pub fn material(&self) -> &MaterialRef {
        &self.parts[0].material
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> {
        self.parts.iter().flat_map(|p| p.triangles.iter())
    }

    pub fn triangle_count(&self) -> usize {
        self.parts.iter().map(|p| p.triangles.len()).sum()
    }

    pub fn bounds(&self) -> Aabb {
        let mut b = Aabb::empty();
        for t in self.triangles() {
            for v in t.0 {
                b.grow(v);
            }
        }
        b
    }

    /// Stable group name used in mesh exports.
    pub fn group_name(&self) -> String {
        format!("{}_{:04}_{}", self.class, self.id, self.kind.label())
    }
}
