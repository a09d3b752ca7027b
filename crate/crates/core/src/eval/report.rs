use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::metrics::{metrics, per_class_accuracy, ConfusionCounts};
use super::EvalError;
use crate::class::SemanticClass;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiouAggregation {
    /// Sum counts over all images, then take per-class IoU.
    #[default]
    Dataset,
    /// Mean over images of each image's mIoU.
    PerImage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: SemanticClass,
    /// Mean per-image recall in percent; images without the class in
    /// either map score 100.
    pub accuracy: f64,
    /// (tp + tn) / total over the set, in percent.
    pub binary_accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub iou: Option<f64>,
    pub support: u64,
    pub counts: ConfusionCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub image_count: usize,
    pub pixel_count: u64,
    pub aggregation: MiouAggregation,
    pub classes: Vec<ClassReport>,
    /// Correct pixels / all pixels, in percent.
    pub micro_accuracy: f64,
    /// Unweighted means over classes present in prediction or truth.
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    /// Means weighted by ground-truth pixel count.
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    pub weighted_f1: f64,
    /// Headline mIoU under `aggregation`.
    pub miou: f64,
    pub dataset_miou: f64,
    pub per_image_miou: f64,
    /// Dataset-level mIoU over every class except background.
    pub foreground_miou: Option<f64>,
}

fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn miou_of(counts: &[ConfusionCounts]) -> Option<f64> {
    mean(counts.iter().filter_map(|c| metrics(c).iou))
}

impl EvalReport {
    pub fn from_counts(
        per_image: &[[ConfusionCounts; SemanticClass::COUNT]],
        aggregation: MiouAggregation,
    ) -> Self {
        let mut total = [ConfusionCounts::default(); SemanticClass::COUNT];
        for img in per_image {
            for (t, c) in total.iter_mut().zip(img) {
                *t = t.add(c);
            }
        }
        let pixel_count = total[0].total();
        let classes: Vec<ClassReport> = SemanticClass::ALL
            .iter()
            .map(|&class| {
                let c = total[class.index()];
                let m = metrics(&c);
                ClassReport {
                    class,
                    accuracy: per_class_accuracy(per_image, class),
                    binary_accuracy: 100.0 * m.accuracy,
                    precision: m.precision,
                    recall: m.recall,
                    f1: m.f1,
                    iou: m.iou,
                    support: c.support(),
                    counts: c,
                }
            })
            .collect();

        let correct: u64 = total.iter().map(|c| c.tp).sum();
        let micro_accuracy = if pixel_count == 0 {
            0.0
        } else {
            100.0 * correct as f64 / pixel_count as f64
        };
        let present: Vec<&ClassReport> = classes.iter().filter(|c| !c.counts.is_absent()).collect();
        let macro_of = |f: fn(&ClassReport) -> f64| mean(present.iter().map(|c| f(c))).unwrap_or(0.0);
        let support: u64 = classes.iter().map(|c| c.support).sum();
        let weighted_of = |f: fn(&ClassReport) -> f64| {
            if support == 0 {
                0.0
            } else {
                classes
                    .iter()
                    .map(|c| f(c) * c.support as f64)
                    .sum::<f64>()
                    / support as f64
            }
        };
        let dataset_miou = miou_of(&total).unwrap_or(0.0);
        let per_image_miou = mean(per_image.iter().map(|c| miou_of(c).unwrap_or(0.0))).unwrap_or(0.0);
        let foreground_miou = miou_of(&total[..SemanticClass::Background.index()]);
        Self {
            image_count: per_image.len(),
            pixel_count,
            aggregation,
            micro_accuracy,
            macro_precision: macro_of(|c| c.precision),
            macro_recall: macro_of(|c| c.recall),
            macro_f1: macro_of(|c| c.f1),
            weighted_precision: weighted_of(|c| c.precision),
            weighted_recall: weighted_of(|c| c.recall),
            weighted_f1: weighted_of(|c| c.f1),
            miou: match aggregation {
                MiouAggregation::Dataset => dataset_miou,
                MiouAggregation::PerImage => per_image_miou,
            },
            dataset_miou,
            per_image_miou,
            foreground_miou,
            classes,
        }
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<12} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>12}",
            "class", "acc(%)", "bin(%)", "prec", "recall", "f1", "iou", "support"
        );
        for c in &self.classes {
            let iou = c.iou.map_or_else(|| "-".to_owned(), |v| format!("{v:.4}"));
            let _ = writeln!(
                s,
                "{:<12} {:>9.2} {:>9.2} {:>9.4} {:>9.4} {:>9.4} {:>9} {:>12}",
                c.class.name(),
                c.accuracy,
                c.binary_accuracy,
                c.precision,
                c.recall,
                c.f1,
                iou,
                c.support
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "images            {}", self.image_count);
        let _ = writeln!(s, "pixels            {}", self.pixel_count);
        let _ = writeln!(s, "micro accuracy    {:.2}%", self.micro_accuracy);
        let _ = writeln!(
            s,
            "macro P/R/F1      {:.4} / {:.4} / {:.4}",
            self.macro_precision, self.macro_recall, self.macro_f1
        );
        let _ = writeln!(
            s,
            "weighted P/R/F1   {:.4} / {:.4} / {:.4}",
            self.weighted_precision, self.weighted_recall, self.weighted_f1
        );
        let agg = match self.aggregation {
            MiouAggregation::Dataset => "dataset",
            MiouAggregation::PerImage => "per-image",
        };
        let _ = writeln!(s, "{:<18}{:.4}", format!("mIoU ({agg})"), self.miou);
        if let Some(f) = self.foreground_miou {
            let _ = writeln!(s, "foreground mIoU   {f:.4}");
        }
        s
    }

    /// Write the JSON report to `path` and the table next to it as `.txt`.
    pub fn write(&self, path: &Path) -> Result<PathBuf, EvalError> {
        let io = |p: &Path| {
            let p = p.to_owned();
            move |source| EvalError::Io { path: p, source }
        };
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        fs::write(path, json + "\n").map_err(io(path))?;
        let table = path.with_extension("txt");
        fs::write(&table, self.to_table()).map_err(io(&table))?;
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self, EvalError> {
        let text = fs::read_to_string(path).map_err(|source| EvalError::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| EvalError::Json {
            path: path.to_owned(),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub name: String,
    pub image_count: usize,
    pub micro_accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    pub weighted_f1: f64,
    pub miou: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// Write JSON to `path` and the table next to it as `.txt`.
    pub fn write(&self, path: &Path) -> Result<PathBuf, EvalError> {
        let json = serde_json::to_string_pretty(self).expect("comparison serializes");
        fs::write(path, json + "\n").map_err(|source| EvalError::Io {
            path: path.to_owned(),
            source,
        })?;
        let table = path.with_extension("txt");
        fs::write(&table, self.to_table()).map_err(|source| EvalError::Io {
            path: table.clone(),
            source,
        })?;
        Ok(table)
    }

    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        let mut s = format!(
            "{:<width$} {:>7} {:>9} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
            "name", "images", "acc(%)", "P", "R", "F1", "wP", "wR", "wF1", "mIoU"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<width$} {:>7} {:>9.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                r.name,
                r.image_count,
                r.micro_accuracy,
                r.macro_precision,
                r.macro_recall,
                r.macro_f1,
                r.weighted_precision,
                r.weighted_recall,
                r.weighted_f1,
                r.miou
            );
        }
        s
    }
}

/// Rows ordered by descending mIoU; ties keep input order.
pub fn compare_reports(reports: &[(String, EvalReport)]) -> Result<Comparison, EvalError> {
    if reports.len() < 2 {
        return Err(EvalError::TooFewReports(reports.len()));
    }
    let mut rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|(name, r)| ComparisonRow {
            name: name.clone(),
            image_count: r.image_count,
            micro_accuracy: r.micro_accuracy,
            macro_precision: r.macro_precision,
            macro_recall: r.macro_recall,
            macro_f1: r.macro_f1,
            weighted_precision: r.weighted_precision,
            weighted_recall: r.weighted_recall,
            weighted_f1: r.weighted_f1,
            miou: r.miou,
        })
        .collect();
    rows.sort_by(|a, b| b.miou.total_cmp(&a.miou));
    Ok(Comparison { rows })
}
