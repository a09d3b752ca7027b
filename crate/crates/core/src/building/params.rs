//! Generation parameters and the small built-in material/part library.

use serde::{Deserialize, Serialize};

use super::error::BuildError;
use super::footprint::Footprint;
use crate::geom::Vec3;

/// Outward offset of detail polylines (quoins, cornices) beyond the wall face.
pub const DETAIL_OFFSET: f64 = 0.02;
/// Outward distance used when computing fenestration orientation points.
pub const ORIENTATION_DISTANCE: f64 = 0.2;
/// Along-wall nudge that keeps orientation points off the insertion plane.
pub const ORIENTATION_NUDGE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRef {
    pub name: String,
    pub albedo: [u8; 3],
    #[serde(default = "default_roughness")]
    pub roughness: f64,
    #[serde(default)]
    pub reflectivity: f64,
}

fn default_roughness() -> f64 {
    0.8
}

impl MaterialRef {
    pub fn new(name: &str, albedo: [u8; 3]) -> Self {
        Self {
            name: name.to_owned(),
            albedo,
            roughness: default_roughness(),
            reflectivity: 0.0,
        }
    }

    pub fn glass() -> Self {
        Self {
            name: "glass".into(),
            albedo: [40, 52, 60],
            roughness: 0.05,
            reflectivity: 0.35,
        }
    }

    pub fn is_glass(&self) -> bool {
        self.reflectivity > 0.0
    }

    pub fn albedo_linear(&self) -> Vec3 {
        let [r, g, b] = self.albedo;
        Vec3::new(r as f64, g as f64, b as f64) / 255.0
    }

    fn validate(&self, field: &'static str) -> Result<(), BuildError> {
        if self.name.is_empty() {
            return Err(invalid(field, "material name is empty"));
        }
        if !(0.0..=1.0).contains(&self.roughness) {
            return Err(invalid(field, "roughness outside [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.reflectivity) {
            return Err(invalid(field, "reflectivity outside [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartKind {
    Door,
    Window,
    Pilaster,
}

/// A parametric library part. `depth` is only meaningful for pilasters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartRef {
    pub id: String,
    pub kind: PartKind,
    pub width: f64,
    pub height: f64,
    #[serde(default)]
    pub sill: f64,
    #[serde(default)]
    pub depth: f64,
}

impl PartRef {
    pub fn standard_door() -> Self {
        Self {
            id: "door".into(),
            kind: PartKind::Door,
            width: 1.0,
            height: 2.1,
            sill: 0.0,
            depth: 0.0,
        }
    }

    pub fn standard_window() -> Self {
        Self {
            id: "window".into(),
            kind: PartKind::Window,
            width: 1.2,
            height: 1.4,
            sill: 0.9,
            depth: 0.0,
        }
    }

    pub fn standard_pilaster() -> Self {
        Self {
            id: "pilaster".into(),
            kind: PartKind::Pilaster,
            width: 0.3,
            height: 0.0,
            sill: 0.0,
            depth: 0.1,
        }
    }

    /// The three built-in parts.
    pub fn builtin() -> [PartRef; 3] {
        [
            Self::standard_door(),
            Self::standard_window(),
            Self::standard_pilaster(),
        ]
    }

    fn validate(&self, field: &'static str, kind: PartKind) -> Result<(), BuildError> {
        if self.kind != kind {
            return Err(invalid(field, format!("expected a {kind:?} part")));
        }
        if self.width <= 0.0 || !self.width.is_finite() {
            return Err(invalid(field, "width must be positive"));
        }
        match kind {
            PartKind::Pilaster => {
                if self.depth <= 0.0 {
                    return Err(invalid(field, "pilaster depth must be positive"));
                }
            }
            _ => {
                if self.height <= 0.0 || self.sill < 0.0 {
                    return Err(invalid(field, "height must be positive and sill non-negative"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FenestrationMode {
    #[default]
    Standard,
    Custom,
}

/// A manually placed opening: a point on a wall reference line and a part id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomFenestration {
    pub point: [f64; 3],
    pub part: String,
}

impl CustomFenestration {
    pub fn new(point: Vec3, part: &str) -> Self {
        Self {
            point: [point.x, point.y, point.z],
            part: part.to_owned(),
        }
    }

    pub fn position(&self) -> Vec3 {
        let [x, y, z] = self.point;
        Vec3::new(x, y, z)
    }
}

/// Quoin stone pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuoinStyle {
    /// Equal-length stones on both faces.
    Block,
    /// Long and short stones alternating course by course.
    Alternating,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationParams {
    pub footprint: Footprint,
    pub floor_count: u32,
    pub wall_height: f64,
    pub wall_thickness: f64,
    pub slab_thickness: f64,
    pub opening_spacing: f64,
    pub wall_material: MaterialRef,
    pub roof_material: MaterialRef,
    pub quoin_material: MaterialRef,
    #[serde(default = "MaterialRef::glass")]
    pub glass_material: MaterialRef,
    #[serde(default)]
    pub quoin_style: Option<QuoinStyle>,
    #[serde(default = "default_mortar")]
    pub quoin_mortar_color: [u8; 3],
    #[serde(default)]
    pub cornice_profile: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub pilasters_enabled: bool,
    #[serde(default)]
    pub fenestration_mode: FenestrationMode,
    #[serde(default)]
    pub custom_fenestrations: Vec<CustomFenestration>,
    #[serde(default = "PartRef::standard_window")]
    pub window_part: PartRef,
    #[serde(default = "PartRef::standard_door")]
    pub door_part: PartRef,
    #[serde(default = "PartRef::standard_pilaster")]
    pub pilaster_part: PartRef,
    #[serde(default)]
    pub seed: u64,
}

fn default_mortar() -> [u8; 3] {
    [200, 196, 186]
}

fn invalid(field: &'static str, reason: impl Into<String>) -> BuildError {
    BuildError::InvalidParam {
        field,
        reason: reason.into(),
    }
}

impl GenerationParams {
    /// A plain one-storey box with standard fenestration and no details.
    pub fn simple(footprint: Footprint) -> Self {
        Self {
            footprint,
            floor_count: 1,
            wall_height: 3.0,
            wall_thickness: 0.3,
            slab_thickness: 0.2,
            opening_spacing: 4.0,
            wall_material: MaterialRef::new("plaster", [214, 205, 188]),
            roof_material: MaterialRef::new("roof", [90, 84, 80]),
            quoin_material: MaterialRef::new("stone", [180, 172, 160]),
            glass_material: MaterialRef::glass(),
            quoin_style: None,
            quoin_mortar_color: default_mortar(),
            cornice_profile: None,
            pilasters_enabled: false,
            fenestration_mode: FenestrationMode::Standard,
            custom_fenestrations: Vec::new(),
            window_part: PartRef::standard_window(),
            door_part: PartRef::standard_door(),
            pilaster_part: PartRef::standard_pilaster(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if self.floor_count < 1 {
            return Err(invalid("floor_count", "must be at least 1"));
        }
        for (field, v) in [
            ("wall_height", self.wall_height),
            ("wall_thickness", self.wall_thickness),
            ("slab_thickness", self.slab_thickness),
            ("opening_spacing", self.opening_spacing),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(field, format!("must be a positive length, got {v}")));
            }
        }
        if self.slab_thickness >= self.wall_height {
            return Err(invalid("slab_thickness", "must be below wall_height"));
        }
        self.wall_material.validate("wall_material")?;
        self.roof_material.validate("roof_material")?;
        self.quoin_material.validate("quoin_material")?;
        self.glass_material.validate("glass_material")?;
        self.window_part.validate("window_part", PartKind::Window)?;
        self.door_part.validate("door_part", PartKind::Door)?;
        self.pilaster_part
            .validate("pilaster_part", PartKind::Pilaster)?;
        if self.fenestration_mode == FenestrationMode::Custom && self.custom_fenestrations.is_empty()
        {
            return Err(invalid(
                "custom_fenestrations",
                "must not be empty in custom fenestration mode",
            ));
        }
        if let Some(profile) = &self.cornice_profile {
            if profile.len() < 3 {
                return Err(invalid("cornice_profile", "needs at least 3 points"));
            }
        }
        Ok(())
    }

    /// Resolve a part id against this building's parts and the built-ins.
    pub fn find_part(&self, id: &str) -> Option<PartRef> {
        [&self.door_part, &self.window_part, &self.pilaster_part]
            .into_iter()
            .find(|p| p.id == id)
            .cloned()
            .or_else(|| PartRef::builtin().into_iter().find(|p| p.id == id))
    }

    pub fn mortar_material(&self) -> MaterialRef {
        MaterialRef::new("mortar", self.quoin_mortar_color)
    }

    pub fn total_height(&self) -> f64 {
        self.wall_height * self.floor_count as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> GenerationParams {
        GenerationParams::simple(Footprint::rectangle(10.0, 10.0).unwrap())
    }

    #[test]
    fn simple_params_are_valid() {
        base().validate().unwrap();
    }

    #[test]
    fn custom_mode_requires_entries() {
        let mut p = base();
        p.fenestration_mode = FenestrationMode::Custom;
        let err = p.validate().unwrap_err();
        assert!(matches!(
            err,
            BuildError::InvalidParam {
                field: "custom_fenestrations",
                ..
            }
        ));
    }

    #[test]
    fn non_positive_dimensions_name_the_field() {
        let mut p = base();
        p.wall_thickness = 0.0;
        match p.validate().unwrap_err() {
            BuildError::InvalidParam { field, .. } => assert_eq!(field, "wall_thickness"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn part_lookup() {
        let p = base();
        assert_eq!(p.find_part("door").unwrap().kind, PartKind::Door);
        assert!(p.find_part("skylight").is_none());
    }
}
