//! TOML run configuration shared by the `generate` and `synthesize`
//! commands.
//!
//! ```toml
//! version = 1
//!
//! [building]
//! footprint = [[-5.0, -4.0], [5.0, -4.0], [5.0, 4.0], [-5.0, 4.0]]
//! floor_count = 2
//! # ... remaining GenerationParams fields
//!
//! [dataset]
//! view_count = 8
//! hours = [10.0, 14.0]
//! environments = [0, 1]
//! [[dataset.generations]]
//! # ... one table per building
//! ```
//!
//! Unknown keys are rejected. Integers must fit in a signed 64-bit value.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::building::GenerationParams;
use crate::dataset::DatasetSpec;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("unsupported config version {0} (expected {CONFIG_VERSION})")]
    Version(u32),
    #[error("config has no [{0}] section")]
    Missing(&'static str),
    #[error("cannot serialize config: {0}")]
    Serialize(#[from] toml::ser::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub building: Option<GenerationParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetSpec>,
}

impl Config {
    pub fn for_building(params: GenerationParams) -> Self {
        Self {
            version: CONFIG_VERSION,
            building: Some(params),
            dataset: None,
        }
    }

    pub fn for_dataset(spec: DatasetSpec) -> Self {
        Self {
            version: CONFIG_VERSION,
            building: None,
            dataset: Some(spec),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text)?;
        if cfg.version != CONFIG_VERSION {
            return Err(ConfigError::Version(cfg.version));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> Result<String, ConfigError> {
        Ok(toml::to_string(self)?)
    }

    pub fn building(&self) -> Result<&GenerationParams, ConfigError> {
        self.building.as_ref().ok_or(ConfigError::Missing("building"))
    }

    pub fn dataset(&self) -> Result<&DatasetSpec, ConfigError> {
        self.dataset.as_ref().ok_or(ConfigError::Missing("dataset"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{desk_scale_spec, full_preset_spec};

    const MINIMAL: &str = r#"
version = 1

[building]
footprint = [[0.0, 0.0], [10.0, 0.0], [10.0, 8.0], [0.0, 8.0]]
floor_count = 2
wall_height = 3.0
wall_thickness = 0.3
slab_thickness = 0.2
opening_spacing = 4.0
wall_material = { name = "plaster", albedo = [214, 205, 188] }
roof_material = { name = "slate", albedo = [72, 76, 84] }
quoin_material = { name = "stone", albedo = [180, 172, 160] }
quoin_style = "block"
"#;

    #[test]
    fn parses_minimal_building() {
        let cfg = Config::parse(MINIMAL).unwrap();
        let b = cfg.building().unwrap();
        assert_eq!(b.floor_count, 2);
        assert!(b.validate().is_ok());
        assert!(cfg.dataset().is_err());
    }

    #[test]
    fn unknown_field_is_named() {
        let text = MINIMAL.replace("floor_count = 2", "floor_count = 2\nfloors = 3");
        let err = Config::parse(&text).unwrap_err().to_string();
        assert!(err.contains("floors"), "{err}");
    }

    #[test]
    fn wrong_version() {
        let text = MINIMAL.replace("version = 1", "version = 7");
        assert!(matches!(Config::parse(&text), Err(ConfigError::Version(7))));
    }

    #[test]
    fn dataset_round_trips() {
        for spec in [desk_scale_spec(5), full_preset_spec(0)] {
            let cfg = Config::for_dataset(spec);
            let back = Config::parse(&cfg.to_toml().unwrap()).unwrap();
            assert_eq!(back, cfg);
        }
    }
}
