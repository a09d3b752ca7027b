//! Opening layout along wall edges, door/window split, orientation points.

use serde::{Deserialize, Serialize};

use super::error::BuildError;
use super::tree::{ObjectTree, TreePath};
use crate::geom::{Segment3, Vec3};

/// Insertion points are segment midpoints; division points are the segment
/// boundaries, trimmed endpoints included.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OpeningLayout {
    pub insertion: Vec<Vec3>,
    pub division: Vec<Vec3>,
}

/// Number of whole `spacing` segments on an edge of length `length`, with
/// the leftover split evenly between both ends.
pub fn segment_count(length: f64, spacing: f64) -> (usize, f64) {
    let k = (length / spacing).floor();
    let remainder = length - k * spacing;
    (k as usize, remainder)
}

/// Lay out openings on `edge` at `spacing` metres.
///
/// The edge is trimmed by half the remainder of `length / spacing` at each
/// end, then divided into `floor(length / spacing)` equal segments.
pub fn compute_opening_points(edge: &Segment3, spacing: f64) -> OpeningLayout {
    let length = edge.length();
    let (k, remainder) = segment_count(length, spacing);
    if k == 0 || spacing.is_nan() || spacing <= 0.0 {
        return OpeningLayout::default();
    }
    let margin = remainder / 2.0;
    let insertion = (0..k)
        .map(|i| edge.point_at(margin + spacing * (i as f64 + 0.5)))
        .collect();
    let division = (0..=k)
        .map(|i| edge.point_at(margin + spacing * i as f64))
        .collect();
    OpeningLayout {
        insertion,
        division,
    }
}

/// An opening insertion point and where it lives in the tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpeningPoint {
    pub path: TreePath,
    /// Position within the wall's opening list.
    pub index: usize,
    pub position: Vec3,
}

/// First opening of every ground-floor wall is a door; everything else
/// (set difference against the door set) is a window.
pub fn split_doors_windows(tree: &ObjectTree) -> (Vec<OpeningPoint>, Vec<OpeningPoint>) {
    let all: Vec<OpeningPoint> = tree
        .walls()
        .flat_map(|(path, wall)| {
            wall.openings
                .iter()
                .enumerate()
                .map(move |(index, &position)| OpeningPoint {
                    path,
                    index,
                    position,
                })
        })
        .collect();
    let doors: Vec<OpeningPoint> = tree
        .select_ground_walls()
        .into_iter()
        .filter_map(|path| {
            let wall = tree.wall(path)?;
            wall.openings.first().map(|&position| OpeningPoint {
                path,
                index: 0,
                position,
            })
        })
        .collect();
    let windows = all
        .into_iter()
        .filter(|p| !doors.iter().any(|d| d.path == p.path && d.index == p.index))
        .collect();
    (doors, windows)
}

/// Tolerance for treating a point as lying on a wall reference line.
pub const HOST_TOLERANCE: f64 = 1e-6;

/// Point that fixes a fenestration's outside and opening directions:
/// `outward_distance` out of the building plus `nudge` along the wall, so it
/// never lies on the plane through the insertion point normal to the wall.
pub fn compute_orientation_point(
    wall_line: &Segment3,
    insertion: Vec3,
    outward_distance: f64,
    nudge: f64,
) -> Result<Vec3, BuildError> {
    let along = wall_line.end - wall_line.start;
    if along.xy().length() == 0.0 {
        return Err(BuildError::DegenerateWall);
    }
    if wall_line.distance_to(insertion) > HOST_TOLERANCE {
        return Err(BuildError::PointNotHosted(insertion));
    }
    let tangent = along.normalized();
    let normal = tangent.xy().right_normal().normalized().extend(0.0);
    Ok(insertion + normal * outward_distance + tangent * nudge)
}
