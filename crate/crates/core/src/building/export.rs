//! Wavefront OBJ export with one group per object and a JSON sidecar
//! mapping group names to class, tree path and material.
//!
//! For `house.obj` the exporter also writes `house.mtl` and
//! `house.meta.json`. Sidecar schema (version 1):
//!
//! ```json
//! { "version": 1,
//!   "objects": [ { "objectId": 1, "group": "wall_0001_wall", "class": "wall",
//!                  "treePath": "0:0:0", "material": "plaster" } ] }
//! ```

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use thiserror::Error;

use super::model::BuildingModel;
use super::params::MaterialRef;
use crate::class::SemanticClass;

pub const SIDECAR_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("malformed sidecar {path}: {source}")]
    Sidecar {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("mesh and sidecar disagree: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SidecarEntry {
    pub object_id: u32,
    pub group: String,
    pub class: SemanticClass,
    pub tree_path: Option<String>,
    pub material: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub version: u32,
    pub objects: Vec<SidecarEntry>,
}

/// Paths written by [`export_model`].
#[derive(Debug, Clone)]
pub struct ExportedFiles {
    pub mesh: PathBuf,
    pub materials: PathBuf,
    pub sidecar: PathBuf,
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    path.with_file_name(format!("{stem}.{ext}"))
}

fn write(path: &Path, contents: &str) -> Result<(), ExportError> {
    fs::write(path, contents).map_err(|source| ExportError::Write {
        path: path.to_owned(),
        source,
    })
}

pub fn obj_text(model: &BuildingModel, mtl_name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# facade-synth building, {} objects", model.objects.len());
    let _ = writeln!(s, "mtllib {mtl_name}");
    let mut next_vertex = 1usize;
    for obj in &model.objects {
        let _ = writeln!(s, "g {}", obj.group_name());
        for part in &obj.parts {
            let _ = writeln!(s, "usemtl {}", part.material.name);
            for tri in &part.triangles {
                for v in tri.0 {
                    let _ = writeln!(s, "v {:.6} {:.6} {:.6}", v.x, v.y, v.z);
                }
                let i = next_vertex;
                let _ = writeln!(s, "f {} {} {}", i, i + 1, i + 2);
                next_vertex += 3;
            }
        }
    }
    s
}

fn mtl_text(model: &BuildingModel) -> String {
    let mut mats: BTreeMap<&str, &MaterialRef> = BTreeMap::new();
    for o in &model.objects {
        for p in &o.parts {
            mats.entry(p.material.name.as_str()).or_insert(&p.material);
        }
    }
    let mut s = String::new();
    for (name, m) in mats {
        let [r, g, b] = m.albedo;
        let _ = writeln!(s, "newmtl {name}");
        let _ = writeln!(
            s,
            "Kd {:.6} {:.6} {:.6}",
            r as f64 / 255.0,
            g as f64 / 255.0,
            b as f64 / 255.0
        );
        let _ = writeln!(s, "Ns {:.3}", (1.0 - m.roughness) * 1000.0);
        if m.reflectivity > 0.0 {
            let _ = writeln!(s, "Ks {0:.6} {0:.6} {0:.6}", m.reflectivity);
        }
        s.push('\n');
    }
    s
}

pub fn sidecar(model: &BuildingModel) -> Sidecar {
    Sidecar {
        version: SIDECAR_VERSION,
        objects: model
            .objects
            .iter()
            .map(|o| SidecarEntry {
                object_id: o.id,
                group: o.group_name(),
                class: o.class,
                tree_path: o.tree_path.map(|p| p.to_string()),
                material: o.material().name.clone(),
            })
            .collect(),
    }
}

/// Write `path` (OBJ) plus the `.mtl` and `.meta.json` siblings.
pub fn export_model(model: &BuildingModel, path: &Path) -> Result<ExportedFiles, ExportError> {
    let files = ExportedFiles {
        mesh: path.to_owned(),
        materials: sibling(path, "mtl"),
        sidecar: sibling(path, "meta.json"),
    };
    let mtl_name = files
        .materials
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    write(&files.mesh, &obj_text(model, &mtl_name))?;
    write(&files.materials, &mtl_text(model))?;
    let json = serde_json::to_string_pretty(&sidecar(model)).expect("sidecar serializes");
    write(&files.sidecar, &(json + "\n"))?;
    Ok(files)
}

/// One group as read back from an exported mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportedObject {
    pub group: String,
    pub class: SemanticClass,
    pub triangles: usize,
}

/// Read an exported OBJ and its sidecar back, joining them by group name.
pub fn import_model(path: &Path) -> Result<Vec<ImportedObject>, ExportError> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|source| ExportError::Read {
            path: p.to_owned(),
            source,
        })
    };
    let obj = read(path)?;
    let meta_path = sibling(path, "meta.json");
    let meta: Sidecar =
        serde_json::from_str(&read(&meta_path)?).map_err(|source| ExportError::Sidecar {
            path: meta_path.clone(),
            source,
        })?;

    let mut groups: Vec<(String, usize)> = Vec::new();
    for line in obj.lines() {
        if let Some(name) = line.strip_prefix("g ") {
            groups.push((name.trim().to_owned(), 0));
        } else if line.starts_with("f ") {
            match groups.last_mut() {
                Some(g) => g.1 += 1,
                None => return Err(ExportError::Mismatch("face before any group".into())),
            }
        }
    }
    if groups.len() != meta.objects.len() {
        return Err(ExportError::Mismatch(format!(
            "{} groups vs {} sidecar entries",
            groups.len(),
            meta.objects.len()
        )));
    }
    groups
        .into_iter()
        .map(|(group, triangles)| {
            let entry = meta
                .objects
                .iter()
                .find(|e| e.group == group)
                .ok_or_else(|| ExportError::Mismatch(format!("group `{group}` not in sidecar")))?;
            Ok(ImportedObject {
                class: entry.class,
                group,
                triangles,
            })
        })
        .collect()
}
