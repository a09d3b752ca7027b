//! Parametric building generation.
//!
//! A footprint polygon is arrayed into walls per floor, capped with slabs,
//! pierced with doors and windows laid out along each wall, and optionally
//! dressed with quoins, a cornice and pilasters. Every object carries one of
//! the segmentation classes so renders can produce label masks directly.

mod details;
mod error;
mod export;
mod fenestration;
mod footprint;
mod model;
mod object;
mod openings;
mod params;
mod slabs;
mod tree;
mod walls;

pub use details::{
    corner_edges, generate_cornices, generate_pilasters, generate_quoins, quoin_rotation_angle,
    sweep_profile,
};
pub use error::{BuildError, FootprintError};
pub use export::{
    export_model, import_model, obj_text, sidecar, ExportError, ExportedFiles, ImportedObject,
    Sidecar, SidecarEntry, SIDECAR_VERSION,
};
pub use fenestration::{
    apply_custom_fenestrations, place_fenestrations, place_one, FenestrationMaterials,
};
pub use footprint::Footprint;
pub use model::{generate_building, BuildingModel};
pub use object::{BimObject, MeshPart, ObjectKind};
pub use openings::{
    compute_opening_points, compute_orientation_point, segment_count, split_doors_windows,
    OpeningLayout, OpeningPoint, HOST_TOLERANCE,
};
pub use params::{
    CustomFenestration, FenestrationMode, GenerationParams, MaterialRef, PartKind, PartRef,
    QuoinStyle, DETAIL_OFFSET, ORIENTATION_DISTANCE, ORIENTATION_NUDGE,
};
pub use slabs::{extrude_polygon, generate_slabs_and_roof};
pub use tree::{BuildingNode, FloorNode, ObjectTree, TreePath, WallNode};
pub use walls::{generate_walls, OpeningRect, Wall};
