use crate::geom::Vec3;
use thiserror::Error;

use super::tree::TreePath;

#[derive(Debug, Error, PartialEq)]
pub enum FootprintError {
    #[error("footprint needs at least 3 distinct points, got {0}")]
    TooFewPoints(usize),
    #[error("footprint has zero area")]
    ZeroArea,
    #[error("footprint edges intersect each other")]
    SelfIntersecting,
    #[error("footprint coordinates must be finite")]
    NonFinite,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Footprint(#[from] FootprintError),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("outward offset of {distance} m degenerates the {what} outline")]
    OffsetDegenerate { what: &'static str, distance: f64 },

    #[error("wall reference line has zero length")]
    DegenerateWall,

    #[error("point ({}, {}, {}) does not lie on any wall reference line", .0.x, .0.y, .0.z)]
    PointNotHosted(Vec3),

    #[error("part `{part}` ({width} m) does not fit the remaining segment of wall {path}")]
    PartTooWide {
        part: String,
        width: f64,
        path: TreePath,
    },

    #[error("part `{part}` reaches {top} m, above the {wall_height} m wall")]
    PartTooTall {
        part: String,
        top: f64,
        wall_height: f64,
    },

    #[error("unknown part id `{0}`")]
    UnknownPart(String),

    #[error("part `{0}` is not a door or window")]
    NotAnOpening(String),

    #[error("corner edges are anti-parallel; no quoin rotation exists")]
    StraightCorner,

    #[error("cornice profile is not a simple polygon")]
    BadProfile,
}
