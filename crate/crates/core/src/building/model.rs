use serde::{Deserialize, Serialize};

use super::details::{generate_cornices, generate_pilasters, generate_quoins};
use super::error::BuildError;
use super::fenestration::{
    apply_custom_fenestrations, place_fenestrations, FenestrationMaterials,
};
use super::object::BimObject;
use super::openings::{compute_opening_points, split_doors_windows};
use super::params::{FenestrationMode, GenerationParams, DETAIL_OFFSET};
use super::slabs::generate_slabs_and_roof;
use super::tree::{ObjectTree, TreePath};
use super::walls::generate_walls;
use crate::class::SemanticClass;
use crate::geom::{offset_polygon, Aabb, Vec2, Vec3};

/// A generated building. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildingModel {
    pub objects: Vec<BimObject>,
    pub tree: ObjectTree,
    pub bounding_box: Aabb,
    pub params: GenerationParams,
}

impl BuildingModel {
    /// A model with no geometry, for background-only renders.
    pub fn empty(params: GenerationParams) -> Self {
        Self {
            objects: Vec::new(),
            tree: ObjectTree::default(),
            bounding_box: Aabb::empty(),
            params,
        }
    }

    pub fn count_by_class(&self) -> [usize; SemanticClass::COUNT] {
        let mut counts = [0; SemanticClass::COUNT];
        for o in &self.objects {
            counts[o.class.index()] += 1;
        }
        counts
    }

    pub fn objects_of(&self, class: SemanticClass) -> impl Iterator<Item = &BimObject> {
        self.objects.iter().filter(move |o| o.class == class)
    }
}

/// Build the complete classed model. Pure: equal params give equal models.
pub fn generate_building(params: &GenerationParams) -> Result<BuildingModel, BuildError> {
    params.validate()?;
    let fp = &params.footprint;
    let (mut walls, mut tree) = generate_walls(
        fp,
        params.floor_count,
        params.wall_height,
        params.wall_thickness,
        &params.wall_material,
    )?;
    let face_offset = params.wall_thickness / 2.0 + DETAIL_OFFSET;
    let slabs = generate_slabs_and_roof(
        fp,
        params.floor_count,
        params.wall_height,
        params.slab_thickness,
        face_offset,
        &params.roof_material,
    )?;

    let layouts: Vec<_> = walls
        .iter()
        .map(|w| (w.path, compute_opening_points(&w.line, params.opening_spacing)))
        .collect();
    let materials = FenestrationMaterials::with_glass(params.glass_material.clone());
    let fenestrations = match params.fenestration_mode {
        FenestrationMode::Standard => {
            for (path, layout) in &layouts {
                tree.wall_mut(*path)
                    .expect("walls and tree share paths")
                    .openings = layout.insertion.clone();
            }
            let (doors, windows) = split_doors_windows(&tree);
            place_fenestrations(
                &mut walls,
                &doors,
                &windows,
                &params.door_part,
                &params.window_part,
                &materials,
            )?
        }
        FenestrationMode::Custom => apply_custom_fenestrations(
            &mut walls,
            &mut tree,
            &params.custom_fenestrations,
            params,
            &materials,
        )?,
    };

    let detail_outline =
        offset_polygon(fp.vertices(), face_offset).ok_or(BuildError::OffsetDegenerate {
            what: "detail",
            distance: face_offset,
        })?;
    let total_height = params.total_height();
    let quoins = generate_quoins(
        &detail_outline,
        total_height,
        params.quoin_style,
        &params.quoin_material,
        &params.mortar_material(),
        params.seed,
    );
    let profile: Option<Vec<Vec2>> = params
        .cornice_profile
        .as_ref()
        .map(|p| p.iter().map(|&[x, y]| Vec2::new(x, y)).collect());
    let cornice_top = profile
        .as_ref()
        .map_or(0.0, |p| p.iter().map(|v| v.y).fold(f64::NEG_INFINITY, f64::max));
    let cornices = generate_cornices(
        &detail_outline,
        total_height - params.slab_thickness - cornice_top,
        profile.as_deref(),
        &params.wall_material,
    )?;
    let divisions: Vec<(TreePath, Vec<Vec3>)> = layouts
        .into_iter()
        .map(|(p, l)| (p, l.division))
        .collect();
    let pilasters = generate_pilasters(
        &walls,
        &divisions,
        params.pilasters_enabled,
        &params.pilaster_part,
        &params.quoin_material,
    );

    let mut objects: Vec<BimObject> = walls.iter().map(|w| w.to_object()).collect();
    objects.extend(slabs);
    objects.extend(fenestrations);
    objects.extend(quoins);
    objects.extend(cornices);
    objects.extend(pilasters);
    let mut bounding_box = Aabb::empty();
    for (i, o) in objects.iter_mut().enumerate() {
        o.id = i as u32 + 1;
        bounding_box = bounding_box.union(&o.bounds());
    }
    Ok(BuildingModel {
        objects,
        tree,
        bounding_box,
        params: params.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::footprint::Footprint;
    use crate::building::object::ObjectKind;
    use crate::building::params::{CustomFenestration, QuoinStyle};

    fn square_two_floors() -> GenerationParams {
        let mut p = GenerationParams::simple(Footprint::rectangle(10.0, 10.0).unwrap());
        p.floor_count = 2;
        p.opening_spacing = 4.0;
        p
    }

    #[test]
    fn composed_counts() {
        let model = generate_building(&square_two_floors()).unwrap();
        let c = model.count_by_class();
        assert_eq!(
            model
                .objects
                .iter()
                .filter(|o| matches!(o.kind, ObjectKind::Wall))
                .count(),
            8
        );
        let slabs = model
            .objects
            .iter()
            .filter(|o| matches!(o.kind, ObjectKind::Slab { .. }))
            .count();
        assert_eq!(slabs, 2);
        assert_eq!(c[SemanticClass::Roof.index()], 1);
        // Two openings per 10 m wall, four walls, two floors.
        assert_eq!(c[SemanticClass::Door.index()], 4);
        assert_eq!(c[SemanticClass::Window.index()], 12);
        for f in 0..2 {
            let per_floor: usize = (0..4)
                .map(|w| model.tree.wall(TreePath::new(0, f, w)).unwrap().openings.len())
                .sum();
            assert_eq!(per_floor, 8);
        }
        assert!(model.tree.is_consistent());
    }

    #[test]
    fn bounding_box_encloses_everything() {
        let mut p = square_two_floors();
        p.quoin_style = Some(QuoinStyle::Alternating);
        p.pilasters_enabled = true;
        p.cornice_profile = Some(vec![[-0.02, 0.0], [0.12, 0.0], [0.12, 0.2], [-0.02, 0.2]]);
        let model = generate_building(&p).unwrap();
        for o in &model.objects {
            for t in o.triangles() {
                for v in t.0 {
                    assert!(model.bounding_box.contains(v));
                }
            }
        }
        assert!(model.objects_of(SemanticClass::Column).count() > 0);
        let ids: Vec<u32> = model.objects.iter().map(|o| o.id).collect();
        assert_eq!(ids, (1..=model.objects.len() as u32).collect::<Vec<_>>());
    }

    #[test]
    fn deterministic_serialization() {
        let p = square_two_floors();
        let a = serde_json::to_vec(&generate_building(&p).unwrap()).unwrap();
        let b = serde_json::to_vec(&generate_building(&p).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn custom_mode_bypasses_layout() {
        let mut p = square_two_floors();
        p.fenestration_mode = FenestrationMode::Custom;
        p.custom_fenestrations = vec![
            CustomFenestration::new(Vec3::new(0.0, -5.0, 0.0), "door"),
            CustomFenestration::new(Vec3::new(3.0, -5.0, 3.0), "window"),
        ];
        let model = generate_building(&p).unwrap();
        let c = model.count_by_class();
        assert_eq!(c[SemanticClass::Door.index()], 1);
        assert_eq!(c[SemanticClass::Window.index()], 1);
        assert_eq!(
            model.tree.wall(TreePath::new(0, 1, 0)).unwrap().openings.len(),
            1
        );
    }
}
