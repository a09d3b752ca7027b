//! Segmentation scoring of palette-coloured predictions against ground truth.

mod metrics;
mod report;

pub use metrics::{
    confusion, confusion_all, image_class_score, metrics, per_class_accuracy, quantize_pixel,
    quantize_to_palette, ClassMap, ConfusionCounts, Metrics,
};
pub use report::{compare_reports, ClassReport, Comparison, ComparisonRow, EvalReport, MiouAggregation};

use image::GenericImageView;
use rayon::prelude::*;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::class::{ClassPalette, SemanticClass};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid class map: {0}")]
    BadMap(String),
    #[error("no matching prediction/truth pairs between {pred} and {truth}")]
    NoPairs { pred: PathBuf, truth: PathBuf },
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
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("comparison needs at least two reports, got {0}")]
    TooFewReports(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Use the right half of any 2:1 image (stitched training pairs).
    pub pairs: bool,
    /// Only consider files whose name ends with this suffix.
    pub suffix: Option<String>,
    pub aggregation: MiouAggregation,
}

/// Per-image counts for a list of (prediction, truth) maps.
pub fn image_counts(
    maps: &[(ClassMap, ClassMap)],
) -> Result<Vec<[ConfusionCounts; SemanticClass::COUNT]>, EvalError> {
    maps.par_iter()
        .map(|(p, t)| confusion_all(p, t))
        .collect()
}

pub fn evaluate_maps(
    maps: &[(ClassMap, ClassMap)],
    aggregation: MiouAggregation,
) -> Result<EvalReport, EvalError> {
    Ok(EvalReport::from_counts(&image_counts(maps)?, aggregation))
}

fn load_map(path: &Path, palette: &ClassPalette, pairs: bool) -> Result<ClassMap, EvalError> {
    let img = image::open(path)
        .map_err(|source| EvalError::Image {
            path: path.to_owned(),
            source,
        })?
        .to_rgb8();
    let (w, h) = img.dimensions();
    let img = if pairs && w == 2 * h {
        img.view(h, 0, h, h).to_image()
    } else {
        img
    };
    Ok(quantize_to_palette(&img, palette))
}

fn png_names(dir: &Path, suffix: Option<&str>) -> Result<Vec<String>, EvalError> {
    let entries = fs::read_dir(dir).map_err(|source| EvalError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_file())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.to_ascii_lowercase().ends_with(".png"))
        .filter(|n| suffix.is_none_or(|s| n.ends_with(s)))
        .collect();
    names.sort();
    Ok(names)
}

/// File names present in both directories, sorted.
pub fn matching_names(
    pred_dir: &Path,
    truth_dir: &Path,
    suffix: Option<&str>,
) -> Result<Vec<String>, EvalError> {
    let truth = png_names(truth_dir, suffix)?;
    Ok(png_names(pred_dir, suffix)?
        .into_iter()
        .filter(|n| truth.binary_search(n).is_ok())
        .collect())
}

/// Score every prediction in `pred_dir` against the same-named file in
/// `truth_dir`.
pub fn evaluate_set(
    pred_dir: &Path,
    truth_dir: &Path,
    palette: &ClassPalette,
    opts: &EvalOptions,
) -> Result<EvalReport, EvalError> {
    let names = matching_names(pred_dir, truth_dir, opts.suffix.as_deref())?;
    if names.is_empty() {
        return Err(EvalError::NoPairs {
            pred: pred_dir.to_owned(),
            truth: truth_dir.to_owned(),
        });
    }
    let counts = names
        .par_iter()
        .map(|n| {
            let p = load_map(&pred_dir.join(n), palette, opts.pairs)?;
            let t = load_map(&truth_dir.join(n), palette, opts.pairs)?;
            confusion_all(&p, &t).map_err(|e| match e {
                EvalError::DimensionMismatch(m) => EvalError::DimensionMismatch(format!("{n}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EvalReport::from_counts(&counts, opts.aggregation))
}

