use serde::{Deserialize, Serialize};

use super::RenderError;
use crate::geom::{Aabb, Vec3};

pub const DEFAULT_FOV_DEG: f64 = 50.0;
/// Orbit radius as a multiple of the bounding-sphere radius.
pub const ORBIT_RADIUS_FACTOR: f64 = 2.2;
/// Eye level of the low camera ring.
pub const EYE_HEIGHT: f64 = 1.7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraPose {
    pub position: Vec3,
    pub look_at: Vec3,
    pub up: Vec3,
    pub vertical_fov_deg: f64,
}

impl CameraPose {
    pub fn new(position: Vec3, look_at: Vec3, vertical_fov_deg: f64) -> Result<Self, RenderError> {
        if position == look_at {
            return Err(RenderError::InvalidCamera("position equals look-at point".into()));
        }
        if !(vertical_fov_deg > 10.0 && vertical_fov_deg < 120.0) {
            return Err(RenderError::InvalidCamera(format!(
                "vertical FOV {vertical_fov_deg}° outside (10, 120)"
            )));
        }
        Ok(Self {
            position,
            look_at,
            up: Vec3::Z,
            vertical_fov_deg,
        })
    }

    /// Pinhole ray through the centre of pixel (`px`, `py`); row 0 is the top.
    pub fn ray(&self, px: u32, py: u32, width: u32, height: u32) -> (Vec3, Vec3) {
        let forward = (self.look_at - self.position).normalized();
        let mut right = forward.cross(self.up);
        if right.length() < 1e-12 {
            // Looking straight up or down; any horizontal right vector works.
            right = Vec3::new(1.0, 0.0, 0.0);
        }
        let right = right.normalized();
        let up = right.cross(forward);
        let half = (self.vertical_fov_deg.to_radians() / 2.0).tan();
        let aspect = width as f64 / height as f64;
        let sx = ((px as f64 + 0.5) / width as f64 * 2.0 - 1.0) * half * aspect;
        let sy = (1.0 - (py as f64 + 0.5) / height as f64 * 2.0) * half;
        let dir = (forward + right * sx + up * sy).normalized();
        (self.position, dir)
    }
}

/// Orbit of `view_count` poses around the box centroid. Even views sit at
/// eye level, odd views above the roof; all share the same radius and FOV.
pub fn build_camera_path(bounds: &Aabb, view_count: usize) -> Vec<CameraPose> {
    if bounds.is_empty() {
        return Vec::new();
    }
    let centre = bounds.center();
    let radius = bounds.extent().length() / 2.0;
    let orbit = ORBIT_RADIUS_FACTOR * radius;
    let high = bounds.extent().z + 0.5 * radius;
    (0..view_count)
        .map(|i| {
            let az = (360.0 * i as f64 / view_count as f64).to_radians();
            let z = if i % 2 == 0 { EYE_HEIGHT } else { high };
            CameraPose {
                position: Vec3::new(centre.x + orbit * az.cos(), centre.y + orbit * az.sin(), z),
                look_at: centre,
                up: Vec3::Z,
                vertical_fov_deg: DEFAULT_FOV_DEG,
            }
        })
        .collect()
}

/// Azimuth of a pose around `centre`, in degrees in [0, 360).
pub fn azimuth_deg(pose: &CameraPose, centre: Vec3) -> f64 {
    let d = pose.position - centre;
    d.y.atan2(d.x).to_degrees().rem_euclid(360.0)
}
