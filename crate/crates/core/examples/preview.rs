//! Render the desk-scale set's four buildings from two views into a directory.
//!
//! `cargo run --example preview -- OUT_DIR [SEED]`

use facade_synth::building::generate_building;
use facade_synth::dataset::{crop_and_stitch, desk_scale_spec, encode_png, RENDER_HEIGHT, RENDER_WIDTH};
use facade_synth::render::{
    build_camera_path, render_beauty, render_object_id, sun_state, EnvironmentMap, RenderConfig,
    Scene,
};
use facade_synth::ClassPalette;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().ok_or("usage: preview OUT_DIR [SEED]")?);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    std::fs::create_dir_all(&out)?;
    let spec = desk_scale_spec(seed);
    let cfg = RenderConfig {
        width: RENDER_WIDTH,
        height: RENDER_HEIGHT,
        ..RenderConfig::default()
    };
    let env = EnvironmentMap::procedural(0, seed);
    let sun = sun_state(10.0)?;
    for (g, params) in spec.generations.iter().enumerate() {
        let model = generate_building(params)?;
        let scene = Scene::new(&model);
        for (v, pose) in build_camera_path(&model.bounding_box, 8).iter().take(2).enumerate() {
            let beauty = render_beauty(&scene, pose, &sun, &env, &cfg)?;
            let id = render_object_id(&scene, pose, &ClassPalette::default(), &cfg)?;
            let pair = crop_and_stitch(&beauty, &id, spec.crop_offset_x)?;
            std::fs::write(out.join(format!("g{}_v{v}.png", g + 1)), encode_png(&pair))?;
        }
    }
    Ok(())
}
