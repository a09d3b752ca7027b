use image::RgbImage;
use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::class::{ClassPalette, SemanticClass};

/// Grid of class indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMap {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl ClassMap {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self, EvalError> {
        if data.len() != (width as usize) * (height as usize) {
            return Err(EvalError::BadMap("data length does not match dimensions".into()));
        }
        if let Some(&c) = data.iter().find(|&&c| c as usize >= SemanticClass::COUNT) {
            return Err(EvalError::BadMap(format!("class index {c} out of range")));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn get(&self, x: u32, y: u32) -> SemanticClass {
        let i = y as usize * self.width as usize + x as usize;
        SemanticClass::from_index(self.data[i] as usize).expect("validated on construction")
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }
}

/// Nearest palette colour by squared RGB distance; ties go to the lower
/// class index.
pub fn quantize_pixel(rgb: [u8; 3], palette: &ClassPalette) -> SemanticClass {
    let mut best = (u32::MAX, 0usize);
    for (i, c) in palette.colors().iter().enumerate() {
        let d: u32 = (0..3)
            .map(|k| {
                let e = rgb[k] as i32 - c[k] as i32;
                (e * e) as u32
            })
            .sum();
        if d < best.0 {
            best = (d, i);
        }
    }
    SemanticClass::from_index(best.1).expect("palette has one colour per class")
}

pub fn quantize_to_palette(img: &RgbImage, palette: &ClassPalette) -> ClassMap {
    ClassMap {
        width: img.width(),
        height: img.height(),
        data: img
            .pixels()
            .map(|p| quantize_pixel(p.0, palette).index() as u8)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// Ground-truth pixels of the class.
    pub fn support(&self) -> u64 {
        self.tp + self.fn_
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            tp: self.tp + o.tp,
            tn: self.tn + o.tn,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
        }
    }

    /// True when the class appears in neither prediction nor truth.
    pub fn is_absent(&self) -> bool {
        self.tp + self.fp + self.fn_ == 0
    }
}

fn check_dims(pred: &ClassMap, truth: &ClassMap) -> Result<(), EvalError> {
    if pred.dimensions() != truth.dimensions() {
        let (pw, ph) = pred.dimensions();
        let (tw, th) = truth.dimensions();
        return Err(EvalError::DimensionMismatch(format!("{pw}x{ph} vs {tw}x{th}")));
    }
    Ok(())
}

/// Class-vs-rest counts over every pixel.
pub fn confusion(
    pred: &ClassMap,
    truth: &ClassMap,
    class: SemanticClass,
) -> Result<ConfusionCounts, EvalError> {
    Ok(confusion_all(pred, truth)?[class.index()])
}

/// Counts for every class in one pass.
pub fn confusion_all(
    pred: &ClassMap,
    truth: &ClassMap,
) -> Result<[ConfusionCounts; SemanticClass::COUNT], EvalError> {
    check_dims(pred, truth)?;
    let mut joint = [[0u64; SemanticClass::COUNT]; SemanticClass::COUNT];
    for (&p, &t) in pred.data.iter().zip(&truth.data) {
        joint[t as usize][p as usize] += 1;
    }
    let total = pred.data.len() as u64;
    Ok(std::array::from_fn(|c| {
        let tp = joint[c][c];
        let fn_ = joint[c].iter().sum::<u64>() - tp;
        let fp = joint.iter().map(|row| row[c]).sum::<u64>() - tp;
        ConfusionCounts {
            tp,
            fp,
            fn_,
            tn: total - tp - fp - fn_,
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// `None` when tp + fp + fn = 0.
    pub iou: Option<f64>,
}

fn ratio_or_one(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Precision, recall and F1 take 0/0 as 1; IoU is undefined for 0/0.
pub fn metrics(c: &ConfusionCounts) -> Metrics {
    let precision = ratio_or_one(c.tp, c.tp + c.fp);
    let recall = ratio_or_one(c.tp, c.tp + c.fn_);
    let f1 = if c.tp + c.fp + c.fn_ == 0 {
        1.0
    } else {
        // Equal to 2PR/(P+R) without the 0/0 when tp = 0.
        2.0 * c.tp as f64 / (2 * c.tp + c.fp + c.fn_) as f64
    };
    let iou = (c.tp + c.fp + c.fn_ > 0).then(|| c.tp as f64 / (c.tp + c.fp + c.fn_) as f64);
    Metrics {
        accuracy: ratio_or_one(c.tp + c.tn, c.total()),
        precision,
        recall,
        f1,
        iou,
    }
}

/// Score of one image for one class, in percent: recall, or 100 when the
/// class is absent from both prediction and truth.
pub fn image_class_score(c: &ConfusionCounts) -> f64 {
    if c.is_absent() {
        100.0
    } else {
        100.0 * ratio_or_one(c.tp, c.tp + c.fn_)
    }
}

/// Mean of [`image_class_score`] over images, in percent.
pub fn per_class_accuracy(
    per_image: &[[ConfusionCounts; SemanticClass::COUNT]],
    class: SemanticClass,
) -> f64 {
    if per_image.is_empty() {
        return 0.0;
    }
    per_image
        .iter()
        .map(|c| image_class_score(&c[class.index()]))
        .sum::<f64>()
        / per_image.len() as f64
}
