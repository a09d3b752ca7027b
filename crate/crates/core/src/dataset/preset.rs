use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DatasetSpec;
use crate::building::{
    CustomFenestration, FenestrationMode, Footprint, GenerationParams, MaterialRef, PartRef,
    QuoinStyle,
};
use crate::geom::Vec3;

pub const PRESET_GENERATIONS: usize = 60;
pub const PRESET_VIEWS: usize = 110;
pub const PRESET_ENVIRONMENTS: u32 = 10;
const WIDTH: f64 = 18.0;
const DEPTH: f64 = 12.0;

const WALLS: [(&str, [u8; 3]); 6] = [
    ("plaster_cream", [222, 211, 186]),
    ("plaster_white", [236, 234, 226]),
    ("brick_red", [150, 74, 56]),
    ("brick_brown", [120, 82, 62]),
    ("stucco_ochre", [204, 168, 108]),
    ("concrete", [166, 164, 160]),
];
const ROOFS: [(&str, [u8; 3]); 4] = [
    ("slate", [72, 76, 84]),
    ("tile_terracotta", [156, 86, 60]),
    ("bitumen", [52, 52, 54]),
    ("copper_patina", [96, 142, 124]),
];
const STONES: [(&str, [u8; 3]); 4] = [
    ("limestone", [206, 198, 178]),
    ("sandstone", [196, 170, 130]),
    ("granite", [140, 138, 136]),
    ("marble", [230, 228, 222]),
];
const CORNICES: [&[[f64; 2]]; 2] = [
    &[[-0.02, 0.0], [0.12, 0.0], [0.12, 0.12], [0.22, 0.2], [0.22, 0.3], [-0.02, 0.3]],
    &[[-0.02, 0.0], [0.08, 0.0], [0.18, 0.1], [0.18, 0.25], [-0.02, 0.25]],
];

fn material(rng: &mut ChaCha8Rng, table: &[(&str, [u8; 3])]) -> MaterialRef {
    let (name, albedo) = *table.choose(rng).expect("nonempty table");
    MaterialRef::new(name, albedo)
}

/// Hand-placed openings on the fixed rectangle: a centred front door with
/// windows either side, windows on the other walls, repeated per floor.
fn custom_layout(floor_count: u32, wall_height: f64) -> Vec<CustomFenestration> {
    let (hx, hy) = (WIDTH / 2.0, DEPTH / 2.0);
    let mut out = Vec::new();
    for f in 0..floor_count {
        let z = f as f64 * wall_height;
        for x in [-7.0, -3.5, 0.0, 3.5, 7.0] {
            let part = if f == 0 && x == 0.0 { "door" } else { "window" };
            out.push(CustomFenestration::new(Vec3::new(x, -hy, z), part));
        }
        for y in [-3.0, 3.0] {
            out.push(CustomFenestration::new(Vec3::new(hx, y, z), "window"));
            out.push(CustomFenestration::new(Vec3::new(-hx, y, z), "window"));
        }
        for x in [-6.0, -2.0, 2.0, 6.0] {
            out.push(CustomFenestration::new(Vec3::new(x, hy, z), "window"));
        }
    }
    out
}

/// Parameters for generation `index` (0-based) of `count`. The first half
/// of the generations are single storey, the second half two storey; within
/// each half the first part is custom-fenestrated, the rest standard.
pub fn preset_generation(seed: u64, index: usize, count: usize) -> GenerationParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64 * 0x5851_F42D));
    let half = count.div_ceil(2);
    let (band, pos, band_len) = if index < half {
        (0, index, half)
    } else {
        (1, index - half, count - half)
    };
    let floor_count = band + 1;
    let custom = pos < band_len.div_ceil(2);

    let footprint = Footprint::rectangle(WIDTH, DEPTH).expect("fixed rectangle is valid");
    let mut p = GenerationParams::simple(footprint);
    p.floor_count = floor_count;
    p.seed = rng.random::<u32>() as u64;
    p.wall_height = rng.random_range(2.9..3.4);
    p.wall_thickness = rng.random_range(0.25..0.35);
    p.slab_thickness = rng.random_range(0.18..0.26);
    p.opening_spacing = rng.random_range(3.2..4.6);
    p.wall_material = material(&mut rng, &WALLS);
    p.roof_material = material(&mut rng, &ROOFS);
    p.quoin_material = material(&mut rng, &STONES);

    let max_window = (p.opening_spacing - 0.8).min(1.5);
    let sill = rng.random_range(0.8..1.0);
    let head_room = p.wall_height - p.slab_thickness - 0.1 - sill;
    p.window_part = PartRef {
        width: rng.random_range(0.9..max_window),
        height: rng.random_range(1.1..1.5f64).min(head_room),
        sill,
        ..PartRef::standard_window()
    };
    p.door_part = PartRef {
        width: rng.random_range(0.9..1.2),
        height: rng.random_range(2.0..2.3f64).min(p.wall_height - p.slab_thickness - 0.1),
        ..PartRef::standard_door()
    };
    p.quoin_style = *[None, Some(QuoinStyle::Block), Some(QuoinStyle::Alternating)]
        .choose(&mut rng)
        .expect("nonempty");
    p.cornice_profile = rng
        .random_bool(0.5)
        .then(|| CORNICES.choose(&mut rng).expect("nonempty").to_vec());
    p.pilasters_enabled = rng.random_bool(0.3);
    if custom {
        p.fenestration_mode = FenestrationMode::Custom;
        p.custom_fenestrations = custom_layout(floor_count, p.wall_height);
    }
    p
}

/// The sixty-building preset: 110 views, hours 8 to 17, ten environments.
pub fn full_preset_spec(seed: u64) -> DatasetSpec {
    preset_spec(seed, PRESET_GENERATIONS)
}

/// Same construction as [`full_preset_spec`] with `count` generations.
pub fn preset_spec(seed: u64, count: usize) -> DatasetSpec {
    DatasetSpec {
        generations: (0..count).map(|i| preset_generation(seed, i, count)).collect(),
        view_count: PRESET_VIEWS,
        hours: (8..=17).map(f64::from).collect(),
        environments: (0..PRESET_ENVIRONMENTS).collect(),
        crop_offset_x: super::DEFAULT_CROP_OFFSET,
        seed,
        environment_dir: None,
    }
}

/// Workstation-sized subset of the preset: one building from each
/// storey/fenestration band (generations 1, 16, 31, 46), 8 views, hours 10
/// and 14, two environments. 128 pairs.
pub fn desk_scale_spec(seed: u64) -> DatasetSpec {
    let full = full_preset_spec(seed);
    DatasetSpec {
        generations: [0, 15, 30, 45]
            .iter()
            .map(|&i| full.generations[i].clone())
            .collect(),
        view_count: 8,
        hours: vec![10.0, 14.0],
        environments: vec![0, 1],
        ..full
    }
}
