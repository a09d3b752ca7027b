//! Batch synthesis of paired beauty/label images.
//!
//! For every (environment, generation, hour, view) tuple the pipeline
//! renders a 341×256 beauty image and object-ID image, crops both to
//! 256×256 at the same offset, and stitches them side by side into a
//! 512×256 pair (beauty left, labels right). Files are named
//! `g{gen:03}_f{frame:04}_e{env:02}_{beauty|id|pair}.png` where
//! `frame = hourIndex * viewCount + viewIndex`.

mod manifest;
mod preset;

pub use manifest::{Manifest, PairRecord, MANIFEST_FILE, MANIFEST_HEADER};
pub use preset::{
    desk_scale_spec, preset_generation, full_preset_spec, preset_spec, PRESET_ENVIRONMENTS,
    PRESET_GENERATIONS, PRESET_VIEWS,
};

use image::{GenericImageView, ImageFormat, RgbImage};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Cursor;
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::building::{generate_building, BuildError, GenerationParams};
use crate::class::ClassPalette;
use crate::render::{
    build_camera_path, render_beauty, render_object_id, sun_state, CameraPose, EnvironmentMap,
    RenderConfig, RenderError, Scene, FIRST_HOUR, LAST_HOUR,
};

pub const RENDER_WIDTH: u32 = 341;
pub const RENDER_HEIGHT: u32 = 256;
pub const CROP_SIZE: u32 = 256;
pub const MAX_CROP_OFFSET: u32 = RENDER_WIDTH - CROP_SIZE;
pub const DEFAULT_CROP_OFFSET: u32 = MAX_CROP_OFFSET / 2;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("invalid dataset spec: {0}")]
    InvalidSpec(String),
    #[error("generation {generation}: {source}")]
    Build {
        generation: usize,
        source: BuildError,
    },
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("expected {expected_w}x{expected_h} images, got {got_w}x{got_h}")]
    SizeMismatch {
        expected_w: u32,
        expected_h: u32,
        got_w: u32,
        got_h: u32,
    },
    #[error("crop offset {0} outside 0..={MAX_CROP_OFFSET}")]
    CropOffset(u32),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        source: image::ImageError,
    },
    #[error("malformed manifest: {0}")]
    Manifest(String),
    #[error("synthesis stopped after {completed} of {planned} pairs: {source}")]
    Partial {
        completed: usize,
        planned: usize,
        source: Box<DatasetError>,
    },
    #[error("worker pool: {0}")]
    Pool(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DatasetError + '_ {
    move |source| DatasetError::Io {
        path: path.to_owned(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    /// Generation ids are 1-based positions in this list.
    pub generations: Vec<GenerationParams>,
    pub view_count: usize,
    pub hours: Vec<f64>,
    pub environments: Vec<u32>,
    #[serde(default = "default_crop")]
    pub crop_offset_x: u32,
    #[serde(default)]
    pub seed: u64,
    /// Directory holding `env{id}.png` panoramas. Procedural maps seeded by
    /// `seed` are used when absent.
    #[serde(default)]
    pub environment_dir: Option<PathBuf>,
}

fn default_crop() -> u32 {
    DEFAULT_CROP_OFFSET
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<(), DatasetError> {
        let bad = |m: &str| Err(DatasetError::InvalidSpec(m.to_owned()));
        if self.generations.is_empty() {
            return bad("generations is empty");
        }
        if self.view_count == 0 {
            return bad("view_count must be at least 1");
        }
        if self.hours.is_empty() {
            return bad("hours is empty");
        }
        if let Some(h) = self
            .hours
            .iter()
            .find(|h| !(FIRST_HOUR..=LAST_HOUR).contains(*h))
        {
            return Err(DatasetError::InvalidSpec(format!("hour {h} outside 8..=17")));
        }
        if self.environments.is_empty() {
            return bad("environments is empty");
        }
        let mut envs = self.environments.clone();
        envs.sort_unstable();
        envs.dedup();
        if envs.len() != self.environments.len() {
            return bad("environment ids must be unique");
        }
        if self.crop_offset_x > MAX_CROP_OFFSET {
            return Err(DatasetError::CropOffset(self.crop_offset_x));
        }
        for (i, g) in self.generations.iter().enumerate() {
            g.validate().map_err(|source| DatasetError::Build {
                generation: i + 1,
                source,
            })?;
        }
        Ok(())
    }

    /// Number of image pairs: generations × views × hours × environments.
    pub fn plan(&self) -> usize {
        plan_dataset(
            self.generations.len(),
            self.view_count,
            self.hours.len(),
            self.environments.len(),
        )
    }

    pub fn frames_per_generation(&self) -> usize {
        self.view_count * self.hours.len()
    }

    /// Content hash of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_vec(self).expect("spec serializes");
        hex::encode(Sha256::digest(json))
    }

    pub fn environment(&self, id: u32) -> Result<EnvironmentMap, DatasetError> {
        match &self.environment_dir {
            Some(dir) => Ok(EnvironmentMap::load(&dir.join(format!("env{id}.png")), id)?),
            None => Ok(EnvironmentMap::procedural(id, self.seed)),
        }
    }
}

pub fn plan_dataset(generations: usize, views: usize, hours: usize, environments: usize) -> usize {
    generations * views * hours * environments
}

pub fn frame_index(hour_index: usize, view_index: usize, view_count: usize) -> usize {
    hour_index * view_count + view_index
}

/// Inverse of [`frame_index`]: `(hour_index, view_index)`.
pub fn decode_frame(frame: usize, view_count: usize) -> (usize, usize) {
    (frame / view_count, frame % view_count)
}

pub fn pair_stem(generation: usize, frame: usize, environment: u32) -> String {
    format!("g{generation:03}_f{frame:04}_e{environment:02}")
}

/// Crop both renders to 256×256 at `offset_x` and join them side by side.
pub fn crop_and_stitch(
    beauty: &RgbImage,
    id: &RgbImage,
    offset_x: u32,
) -> Result<RgbImage, DatasetError> {
    for img in [beauty, id] {
        if img.dimensions() != (RENDER_WIDTH, RENDER_HEIGHT) {
            return Err(DatasetError::SizeMismatch {
                expected_w: RENDER_WIDTH,
                expected_h: RENDER_HEIGHT,
                got_w: img.width(),
                got_h: img.height(),
            });
        }
    }
    if offset_x > MAX_CROP_OFFSET {
        return Err(DatasetError::CropOffset(offset_x));
    }
    let left = beauty.view(offset_x, 0, CROP_SIZE, CROP_SIZE);
    let right = id.view(offset_x, 0, CROP_SIZE, CROP_SIZE);
    Ok(RgbImage::from_fn(2 * CROP_SIZE, CROP_SIZE, |x, y| {
        if x < CROP_SIZE {
            left.get_pixel(x, y)
        } else {
            right.get_pixel(x - CROP_SIZE, y)
        }
    }))
}

pub fn encode_png(img: &RgbImage) -> Vec<u8> {
    let mut buf = Cursor::new(Vec::new());
    img.write_to(&mut buf, ImageFormat::Png)
        .expect("PNG encoding into memory cannot fail");
    buf.into_inner()
}

/// Write via a temporary sibling and rename, so readers never see a
/// half-written file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), DatasetError> {
    let tmp = path.with_extension("png.tmp");
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn read_rgb(path: &Path) -> Result<RgbImage, DatasetError> {
    image::open(path)
        .map(|i| i.to_rgb8())
        .map_err(|source| DatasetError::Image {
            path: path.to_owned(),
            source,
        })
}

/// One finished (environment, generation) batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchProgress {
    pub environment: u32,
    pub generation: usize,
    pub rendered: usize,
    pub skipped: usize,
    pub completed: usize,
    pub planned: usize,
}

struct Prepared {
    scene: Scene,
    poses: Vec<CameraPose>,
}

fn prepare(params: &GenerationParams, generation: usize, views: usize) -> Result<Prepared, DatasetError> {
    let model = generate_building(params).map_err(|source| DatasetError::Build { generation, source })?;
    Ok(Prepared {
        poses: build_camera_path(&model.bounding_box, views),
        scene: Scene::new(&model),
    })
}

struct FrameJob<'a> {
    spec: &'a DatasetSpec,
    out_dir: &'a Path,
    prepared: &'a Prepared,
    env: &'a EnvironmentMap,
    generation: usize,
}

impl FrameJob<'_> {
    /// Returns the record and whether anything was rendered.
    fn run(&self, frame: usize) -> Result<(PairRecord, bool), DatasetError> {
        let stem = pair_stem(self.generation, frame, self.env.index);
        let record = PairRecord {
            generation_id: self.generation,
            frame_index: frame,
            environment_id: self.env.index,
            beauty_path: format!("{stem}_beauty.png"),
            id_path: format!("{stem}_id.png"),
            pair_path: format!("{stem}_pair.png"),
        };
        let paths = record.paths(self.out_dir);
        if paths.iter().all(|p| p.is_file()) {
            return Ok((record, false));
        }
        let (hour_index, view_index) = decode_frame(frame, self.spec.view_count);
        let sun = sun_state(self.spec.hours[hour_index])?;
        let pose = &self.prepared.poses[view_index];
        let cfg = RenderConfig {
            width: RENDER_WIDTH,
            height: RENDER_HEIGHT,
            ..RenderConfig::default()
        };
        let beauty = render_beauty(&self.prepared.scene, pose, &sun, self.env, &cfg)?;
        let id = render_object_id(&self.prepared.scene, pose, &ClassPalette::default(), &cfg)?;
        let pair = crop_and_stitch(&beauty, &id, self.spec.crop_offset_x)?;
        write_atomic(&paths[0], &encode_png(&beauty))?;
        write_atomic(&paths[1], &encode_png(&id))?;
        write_atomic(&paths[2], &encode_png(&pair))?;
        Ok((record, true))
    }
}

pub fn synthesize_dataset(
    spec: &DatasetSpec,
    out_dir: &Path,
    workers: usize,
) -> Result<Manifest, DatasetError> {
    synthesize_dataset_with(spec, out_dir, workers, |_| {})
}

/// Render every tuple of `spec` into `out_dir` and write `dataset.manifest`.
/// Tuples whose three files already exist are not re-rendered. On failure
/// the manifest still lists every record completed before the failing one.
pub fn synthesize_dataset_with(
    spec: &DatasetSpec,
    out_dir: &Path,
    workers: usize,
    mut on_batch: impl FnMut(&BatchProgress),
) -> Result<Manifest, DatasetError> {
    spec.validate()?;
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| DatasetError::Pool(e.to_string()))?;

    let fingerprint = spec.fingerprint();
    let planned = spec.plan();
    let mut records = Vec::with_capacity(planned);
    let mut cache: Vec<Option<Prepared>> = (0..spec.generations.len()).map(|_| None).collect();

    let outcome = (|| -> Result<(), DatasetError> {
        for &env_id in &spec.environments {
            let env = spec.environment(env_id)?;
            for (gi, params) in spec.generations.iter().enumerate() {
                let generation = gi + 1;
                if cache[gi].is_none() {
                    cache[gi] = Some(prepare(params, generation, spec.view_count)?);
                }
                let job = FrameJob {
                    spec,
                    out_dir,
                    prepared: cache[gi].as_ref().expect("just filled"),
                    env: &env,
                    generation,
                };
                let results: Vec<_> = pool.install(|| {
                    (0..spec.frames_per_generation())
                        .into_par_iter()
                        .map(|f| job.run(f))
                        .collect()
                });
                let mut rendered = 0;
                let mut skipped = 0;
                for r in results {
                    let (record, did_render) = r?;
                    if did_render {
                        rendered += 1;
                    } else {
                        skipped += 1;
                    }
                    records.push(record);
                }
                on_batch(&BatchProgress {
                    environment: env_id,
                    generation,
                    rendered,
                    skipped,
                    completed: records.len(),
                    planned,
                });
            }
        }
        Ok(())
    })();

    let manifest = Manifest {
        fingerprint,
        records,
    };
    manifest.write(&out_dir.join(MANIFEST_FILE))?;
    match outcome {
        Ok(()) => Ok(manifest),
        Err(e) => Err(DatasetError::Partial {
            completed: manifest.records.len(),
            planned,
            source: Box::new(e),
        }),
    }
}
