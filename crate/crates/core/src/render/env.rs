use image::{Rgb, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::Path;

use super::RenderError;
use crate::geom::Vec3;

/// Height of the virtual capture point used to project the lower hemisphere
/// onto the ground plane.
pub const TRIPOD_HEIGHT: f64 = 15.0;

/// An equirectangular (2:1) panorama, Z up.
#[derive(Debug, Clone)]
pub struct EnvironmentMap {
    image: RgbImage,
    pub index: u32,
}

impl EnvironmentMap {
    pub fn new(image: RgbImage, index: u32) -> Result<Self, RenderError> {
        let (w, h) = image.dimensions();
        if h == 0 || w != 2 * h {
            return Err(RenderError::BadEnvironment(format!(
                "environment {index} is {w}x{h}, expected 2:1"
            )));
        }
        Ok(Self { image, index })
    }

    pub fn load(path: &Path, index: u32) -> Result<Self, RenderError> {
        let img = image::open(path)
            .map_err(|e| RenderError::BadEnvironment(format!("{}: {e}", path.display())))?;
        Self::new(img.to_rgb8(), index)
    }

    /// Deterministic synthetic panorama: graded sky with soft clouds over a
    /// speckled ground.
    pub fn procedural(index: u32, seed: u64) -> Self {
        let (w, h) = (512u32, 256u32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let zenith = [rng.random_range(40..110), rng.random_range(90..150), rng.random_range(170..240)];
        let horizon = [rng.random_range(180..235), rng.random_range(190..235), rng.random_range(200..245)];
        let ground = [rng.random_range(70..130), rng.random_range(70..120), rng.random_range(55..100)];
        let clouds: Vec<(f64, f64, f64)> = (0..rng.random_range(3..9))
            .map(|_| {
                (
                    rng.random_range(0.0..w as f64),
                    rng.random_range(0.08..0.42) * h as f64,
                    rng.random_range(12.0..40.0),
                )
            })
            .collect();
        let mut image = RgbImage::new(w, h);
        for y in 0..h {
            let v = (y as f64 + 0.5) / h as f64;
            for x in 0..w {
                let px = if v < 0.5 {
                    let t = (v / 0.5).powf(1.5);
                    let mut c = [0.0; 3];
                    for k in 0..3 {
                        c[k] = zenith[k] as f64 * (1.0 - t) + horizon[k] as f64 * t;
                    }
                    let cover: f64 = clouds
                        .iter()
                        .map(|&(cx, cy, r)| {
                            let dx = (x as f64 - cx).abs().min(w as f64 - (x as f64 - cx).abs());
                            let dy = (y as f64 - cy) * 2.0;
                            (-(dx * dx + dy * dy) / (2.0 * r * r)).exp()
                        })
                        .sum::<f64>()
                        .min(1.0);
                    c.map(|ch| ch * (1.0 - cover) + 245.0 * cover)
                } else {
                    let speck = rng.random_range(-18.0..18.0);
                    ground.map(|ch| ch as f64 + speck)
                };
                image.put_pixel(x, y, Rgb(px.map(|c| c.clamp(0.0, 255.0).round() as u8)));
            }
        }
        Self { image, index }
    }

    pub fn dimensions(&self) -> (u32, u32) {
        self.image.dimensions()
    }

    /// Nearest-texel lookup for a unit direction.
    pub fn lookup(&self, dir: Vec3) -> Vec3 {
        let (w, h) = self.image.dimensions();
        let u = 0.5 + dir.y.atan2(dir.x) / (2.0 * PI);
        let v = dir.z.clamp(-1.0, 1.0).acos() / PI;
        let x = ((u * w as f64) as u32).min(w - 1);
        let y = ((v * h as f64) as u32).min(h - 1);
        let Rgb([r, g, b]) = *self.image.get_pixel(x, y);
        Vec3::new(r as f64, g as f64, b as f64) / 255.0
    }
}

/// Radiance seen along a ray that escapes the scene. Downward rays are
/// projected onto the ground plane and looked up from the tripod point, so
/// ground texture stays put as the camera moves.
pub fn env_sample(env: &EnvironmentMap, origin: Vec3, dir: Vec3) -> Vec3 {
    if dir.z >= 0.0 {
        return env.lookup(dir);
    }
    if origin.z <= 0.0 {
        return env.lookup(Vec3::new(0.0, 0.0, -1.0));
    }
    let g = origin + dir * (-origin.z / dir.z);
    let from_tripod = g - Vec3::new(0.0, 0.0, TRIPOD_HEIGHT);
    env.lookup(from_tripod.normalized())
}
