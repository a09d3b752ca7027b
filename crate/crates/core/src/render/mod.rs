//! Ray-cast renderer producing a shaded beauty image and a flat-colour
//! object-ID image from the same camera. Both passes share one primary
//! visibility query, so their silhouettes agree pixel for pixel.

mod bvh;
mod camera;
mod env;
mod sun;

pub use bvh::{Bvh, Hit};
pub use camera::{azimuth_deg, build_camera_path, CameraPose, DEFAULT_FOV_DEG, EYE_HEIGHT, ORBIT_RADIUS_FACTOR};
pub use env::{env_sample, EnvironmentMap, TRIPOD_HEIGHT};
pub use sun::{sun_arc, sun_state, SunState, FIRST_HOUR, LAST_HOUR};

use image::{Rgb, RgbImage};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::building::BuildingModel;
use crate::class::{ClassPalette, SemanticClass};
use crate::geom::{Triangle, Vec3};

const SHADOW_BIAS: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("hour {0} outside 8..=17")]
    HourOutOfRange(f64),
    #[error("invalid camera: {0}")]
    InvalidCamera(String),
    #[error("bad environment map: {0}")]
    BadEnvironment(String),
    #[error("invalid resolution {0}x{1}")]
    BadResolution(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderConfig {
    pub width: u32,
    pub height: u32,
    pub ambient: f64,
    pub shadow_strength: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            width: 341,
            height: 256,
            ambient: 0.25,
            shadow_strength: 0.6,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::BadResolution(self.width, self.height));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Surface {
    class: SemanticClass,
    albedo: Vec3,
    reflectivity: f64,
}

/// Flattened, render-ready form of a building.
#[derive(Debug, Clone)]
pub struct Scene {
    triangles: Vec<Triangle>,
    surfaces: Vec<Surface>,
    bvh: Bvh,
}

impl Scene {
    pub fn new(model: &BuildingModel) -> Self {
        let mut triangles = Vec::new();
        let mut surfaces = Vec::new();
        for obj in &model.objects {
            for part in &obj.parts {
                let s = Surface {
                    class: obj.class,
                    albedo: part.material.albedo_linear(),
                    reflectivity: part.material.reflectivity,
                };
                for t in &part.triangles {
                    triangles.push(*t);
                    surfaces.push(s);
                }
            }
        }
        let bvh = Bvh::build(&triangles);
        Self {
            triangles,
            surfaces,
            bvh,
        }
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// First surface hit by the primary ray through pixel (`px`, `py`).
    pub fn primary_hit(&self, pose: &CameraPose, px: u32, py: u32, cfg: &RenderConfig) -> Option<Hit> {
        let (o, d) = pose.ray(px, py, cfg.width, cfg.height);
        self.bvh.intersect(&self.triangles, o, d, f64::INFINITY)
    }

    fn in_shadow(&self, p: Vec3, sun: &SunState) -> bool {
        self.bvh
            .occluded(&self.triangles, p, sun.direction, f64::INFINITY)
    }

    pub fn class_at(&self, hit: &Hit) -> SemanticClass {
        self.surfaces[hit.triangle].class
    }
}

fn to_rgb(c: Vec3) -> Rgb<u8> {
    let q = |x: f64| (x.clamp(0.0, 1.0) * 255.0).round() as u8;
    Rgb([q(c.x), q(c.y), q(c.z)])
}

fn shade(
    scene: &Scene,
    hit: Option<Hit>,
    o: Vec3,
    d: Vec3,
    sun: &SunState,
    env: &EnvironmentMap,
    cfg: &RenderConfig,
) -> Vec3 {
    match hit {
        Some(h) => {
            let s = scene.surfaces[h.triangle];
            let mut n = scene.triangles[h.triangle].normal();
            if n.dot(d) > 0.0 {
                n = -n;
            }
            let p = o + d * h.t;
            let cos = n.dot(sun.direction);
            let direct = if cos > 0.0 && !scene.in_shadow(p + n * SHADOW_BIAS, sun) {
                sun.intensity * cos
            } else {
                0.0
            };
            let base = s.albedo * (cfg.ambient + direct);
            if s.reflectivity > 0.0 {
                let r = env_sample(env, p + n * SHADOW_BIAS, d.reflect(n));
                base * (1.0 - s.reflectivity) + r * s.reflectivity
            } else {
                base
            }
        }
        None => {
            let c = env_sample(env, o, d);
            if d.z < 0.0 && o.z > 0.0 {
                let g = o + d * (-o.z / d.z);
                if scene.in_shadow(g + Vec3::Z * SHADOW_BIAS, sun) {
                    return c * (1.0 - cfg.shadow_strength);
                }
            }
            c
        }
    }
}

/// Shaded render plus a row-major mask of pixels covered by geometry.
pub fn render_beauty_with_coverage(
    scene: &Scene,
    pose: &CameraPose,
    sun: &SunState,
    env: &EnvironmentMap,
    cfg: &RenderConfig,
) -> Result<(RgbImage, Vec<bool>), RenderError> {
    cfg.validate()?;
    let (w, h) = (cfg.width, cfg.height);
    let rows: Vec<Vec<(Rgb<u8>, bool)>> = (0..h)
        .into_par_iter()
        .map(|y| {
            (0..w)
                .map(|x| {
                    let (o, d) = pose.ray(x, y, w, h);
                    let hit = scene.primary_hit(pose, x, y, cfg);
                    (to_rgb(shade(scene, hit, o, d, sun, env, cfg)), hit.is_some())
                })
                .collect()
        })
        .collect();
    let mut img = RgbImage::new(w, h);
    let mut mask = Vec::with_capacity((w * h) as usize);
    for (y, row) in rows.into_iter().enumerate() {
        for (x, (px, covered)) in row.into_iter().enumerate() {
            img.put_pixel(x as u32, y as u32, px);
            mask.push(covered);
        }
    }
    Ok((img, mask))
}

pub fn render_beauty(
    scene: &Scene,
    pose: &CameraPose,
    sun: &SunState,
    env: &EnvironmentMap,
    cfg: &RenderConfig,
) -> Result<RgbImage, RenderError> {
    render_beauty_with_coverage(scene, pose, sun, env, cfg).map(|(img, _)| img)
}

/// Flat palette colour of the visible object's class; background elsewhere.
/// No lighting, no anti-aliasing.
pub fn render_object_id(
    scene: &Scene,
    pose: &CameraPose,
    palette: &ClassPalette,
    cfg: &RenderConfig,
) -> Result<RgbImage, RenderError> {
    cfg.validate()?;
    let (w, h) = (cfg.width, cfg.height);
    let rows: Vec<Vec<Rgb<u8>>> = (0..h)
        .into_par_iter()
        .map(|y| {
            (0..w)
                .map(|x| {
                    let class = scene
                        .primary_hit(pose, x, y, cfg)
                        .map_or(SemanticClass::Background, |hit| scene.class_at(&hit));
                    Rgb(palette.color(class))
                })
                .collect()
        })
        .collect();
    Ok(RgbImage::from_fn(w, h, |x, y| rows[y as usize][x as usize]))
}
