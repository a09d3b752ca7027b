//! Synthetic facade-segmentation data: parametric buildings, paired
//! beauty/label renders, dataset batching and segmentation metrics.

pub mod building;
pub mod class;
pub mod config;
pub mod dataset;
pub mod eval;
pub mod geom;
pub mod render;

pub use class::{ClassPalette, SemanticClass};
