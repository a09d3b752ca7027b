mod common;

use facade_synth::building::{
    compute_orientation_point, generate_building, split_doors_windows, Footprint,
    GenerationParams, ORIENTATION_DISTANCE, ORIENTATION_NUDGE,
};
use facade_synth::dataset::{decode_frame, frame_index, plan_dataset};
use facade_synth::eval::{confusion_all, metrics, ClassMap, ConfusionCounts, EvalReport, MiouAggregation};
use facade_synth::geom::{Segment3, Vec2, Vec3};
use facade_synth::render::sun_state;
use facade_synth::SemanticClass;
use proptest::prelude::*;

fn rect(w: f64, d: f64, cx: f64, cy: f64) -> Footprint {
    let pts = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
        .map(|(sx, sy)| Vec2::new(cx + sx * w / 2.0, cy + sy * d / 2.0));
    Footprint::normalize(&pts).unwrap()
}

fn building_params() -> impl Strategy<Value = GenerationParams> {
    (6.0..30.0f64, 6.0..30.0f64, -20.0..20.0f64, -20.0..20.0f64, 1u32..4, 2.5..6.0f64, any::<u32>())
        .prop_map(|(w, d, cx, cy, floors, spacing, seed)| {
            let mut p = GenerationParams::simple(rect(w, d, cx, cy));
            p.floor_count = floors;
            p.opening_spacing = spacing;
            p.seed = seed as u64;
            p
        })
}

fn counts() -> impl Strategy<Value = ConfusionCounts> {
    (0u64..50, 0u64..50, 0u64..50, 0u64..50).prop_map(|(tp, tn, fp, fn_)| ConfusionCounts {
        tp,
        tn,
        fp,
        fn_,
    })
}

fn map_pair() -> impl Strategy<Value = (u32, u32, Vec<u8>, Vec<u8>)> {
    (1u32..10, 1u32..10).prop_flat_map(|(w, h)| {
        let n = (w * h) as usize;
        (
            Just(w),
            Just(h),
            prop::collection::vec(0u8..6, n),
            prop::collection::vec(0u8..6, n),
        )
    })
}

fn maps(w: u32, h: u32, p: &[u8], t: &[u8]) -> (ClassMap, ClassMap) {
    (
        ClassMap::new(w, h, p.to_vec()).unwrap(),
        ClassMap::new(w, h, t.to_vec()).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opening_layout_matches_reference(
        ox in -50.0..50.0f64, oy in -50.0..50.0f64, z in 0.0..12.0f64,
        dir in 0.0..360.0f64, len in 0.1..60.0f64, spacing in 0.5..8.0f64,
    ) {
        let r = common::check_layout(Vec3::new(ox, oy, z), dir, len, spacing, 1e-9);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn floors_are_translated_copies(p in building_params()) {
        let m = generate_building(&p).unwrap();
        let floors = &m.tree.buildings[0].floors;
        prop_assert_eq!(floors.len(), p.floor_count as usize);
        for (f, floor) in floors.iter().enumerate() {
            prop_assert_eq!(floor.walls.len(), floors[0].walls.len());
            for (w, base) in floor.walls.iter().zip(&floors[0].walls) {
                let dz = f as f64 * p.wall_height;
                for (a, b) in [(w.line.start, base.line.start), (w.line.end, base.line.end)] {
                    prop_assert_eq!((a.x, a.y), (b.x, b.y));
                    prop_assert_eq!(a.z, b.z + dz);
                }
            }
        }
        prop_assert!(m.tree.is_consistent());
    }

    #[test]
    fn ground_selection_is_complete(p in building_params()) {
        let m = generate_building(&p).unwrap();
        let ground = m.tree.select_ground_walls();
        prop_assert_eq!(ground.len(), m.tree.buildings[0].floors[0].walls.len());
        prop_assert!(ground.iter().all(|g| g.floor == 0));
    }

    #[test]
    fn doors_and_windows_partition_openings(p in building_params()) {
        let m = generate_building(&p).unwrap();
        let (doors, windows) = split_doors_windows(&m.tree);
        let all: usize = m.tree.walls().map(|(_, w)| w.openings.len()).sum();
        prop_assert_eq!(doors.len() + windows.len(), all);
        for d in &doors {
            prop_assert!(!windows.iter().any(|w| w.path == d.path && w.index == d.index));
        }
        for path in m.tree.select_ground_walls() {
            let n = m.tree.wall(path).unwrap().openings.len();
            let here = doors.iter().filter(|d| d.path == path).count();
            prop_assert_eq!(here, n.min(1));
        }
        prop_assert!(doors.iter().all(|d| d.path.floor == 0));
        let by_class = m.count_by_class();
        prop_assert_eq!(by_class[SemanticClass::Door.index()], doors.len());
        prop_assert_eq!(by_class[SemanticClass::Window.index()], windows.len());
    }

    #[test]
    fn orientation_point_is_off_the_normal_plane(
        ox in -50.0..50.0f64, oy in -50.0..50.0f64, dir in 0.0..360.0f64,
        len in 1.0..30.0f64, at in 0.0..1.0f64,
    ) {
        let d = Vec3::new(dir.to_radians().cos(), dir.to_radians().sin(), 0.0);
        let start = Vec3::new(ox, oy, 0.0);
        let line = Segment3::new(start, start + d * len);
        let ins = line.point_at(at * len);
        let o = compute_orientation_point(&line, ins, ORIENTATION_DISTANCE, ORIENTATION_NUDGE).unwrap();
        let rel = o - ins;
        let out = Vec3::new(d.y, -d.x, 0.0);
        prop_assert!((rel.dot(d) - ORIENTATION_NUDGE).abs() < 1e-12);
        prop_assert!(rel.dot(out) > 0.0);
        prop_assert!((rel.dot(out) - ORIENTATION_DISTANCE).abs() < 1e-12);
        prop_assert!(compute_orientation_point(&line, ins + out * 0.5, 0.2, 0.01).is_err());
    }

    #[test]
    fn pilaster_count_grows_as_spacing_shrinks(
        w in 6.0..30.0f64, d in 6.0..30.0f64, s1 in 2.0..8.0f64, s2 in 2.0..8.0f64,
    ) {
        let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        let count = |s: f64| {
            let mut p = GenerationParams::simple(rect(w, d, 0.0, 0.0));
            p.pilasters_enabled = true;
            p.opening_spacing = s;
            generate_building(&p).unwrap().count_by_class()[SemanticClass::Column.index()]
        };
        prop_assert!(count(lo) >= count(hi));
    }

    #[test]
    fn generation_is_deterministic(p in building_params()) {
        prop_assert_eq!(generate_building(&p).unwrap(), generate_building(&p).unwrap());
    }

    #[test]
    fn footprint_normalization(
        pts in prop::collection::vec((-20.0..20.0f64, -20.0..20.0f64), 3..8),
    ) {
        let raw: Vec<Vec2> = pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect();
        if let Ok(fp) = Footprint::normalize(&raw) {
            let v = fp.vertices();
            prop_assert!(v.len() >= 3);
            prop_assert!(fp.area() > 0.0);
            for i in 0..v.len() {
                prop_assert!(v[i] != v[(i + 1) % v.len()]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn iou_bounded_by_precision_and_recall(c in counts()) {
        let m = metrics(&c);
        if let Some(iou) = m.iou {
            prop_assert!(iou <= m.precision && iou <= m.recall);
            for v in [m.accuracy, m.precision, m.recall, m.f1, iou] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn f1_equals_iou_transform(c in counts()) {
        let m = metrics(&c);
        if let Some(iou) = m.iou {
            // Exact as rationals: 2j/(1+j) with j = tp/(tp+fp+fn) is 2tp/(2tp+fp+fn).
            let (_, _, _, f1, _) = common::brute_metrics([c.tp, c.tn, c.fp, c.fn_]);
            prop_assert_eq!(m.f1, f1);
            prop_assert!((m.f1 - 2.0 * iou / (1.0 + iou)).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn swapping_maps_swaps_errors((w, h, p, t) in map_pair()) {
        let (a, b) = maps(w, h, &p, &t);
        let fwd = confusion_all(&a, &b).unwrap();
        let rev = confusion_all(&b, &a).unwrap();
        for (x, y) in fwd.iter().zip(&rev) {
            prop_assert_eq!((x.tp, x.tn, x.fp, x.fn_), (y.tp, y.tn, y.fn_, y.fp));
            prop_assert_eq!(metrics(x).accuracy, metrics(y).accuracy);
            prop_assert_eq!(metrics(x).iou, metrics(y).iou);
        }
    }

    #[test]
    fn fixing_a_pixel_never_hurts((w, h, p, t) in map_pair(), pick in any::<prop::sample::Index>()) {
        let wrong: Vec<usize> = (0..p.len()).filter(|&i| p[i] != t[i]).collect();
        if wrong.is_empty() {
            return Ok(());
        }
        let i = wrong[pick.index(wrong.len())];
        let mut fixed = p.clone();
        fixed[i] = t[i];
        let (a, b) = maps(w, h, &p, &t);
        let (a2, _) = maps(w, h, &fixed, &t);
        let before = EvalReport::from_counts(&[confusion_all(&a, &b).unwrap()], MiouAggregation::Dataset);
        let after = EvalReport::from_counts(&[confusion_all(&a2, &b).unwrap()], MiouAggregation::Dataset);
        prop_assert!(after.micro_accuracy >= before.micro_accuracy);
        for c in [p[i], t[i]] {
            let (x, y) = (before.classes[c as usize].iou, after.classes[c as usize].iou);
            prop_assert!(y.unwrap_or(1.0) >= x.unwrap_or(0.0), "class {}: {:?} -> {:?}", c, x, y);
        }
    }

    #[test]
    fn report_invariants((w, h, p, t) in map_pair()) {
        let (a, b) = maps(w, h, &p, &t);
        let counts = confusion_all(&a, &b).unwrap();
        let r = EvalReport::from_counts(&[counts], MiouAggregation::Dataset);
        let max_iou = r.classes.iter().filter_map(|c| c.iou).fold(0.0, f64::max);
        prop_assert!(r.miou <= max_iou);
        let recall_micro = counts.iter().map(|c| c.tp).sum::<u64>() as f64
            / counts.iter().map(|c| c.support()).sum::<u64>() as f64;
        prop_assert!((r.micro_accuracy - 100.0 * recall_micro).abs() < 1e-9);
        for c in &counts {
            prop_assert_eq!(c.total(), (w * h) as u64);
        }
        for c in &r.classes {
            prop_assert!((0.0..=100.0).contains(&c.accuracy));
            prop_assert!((0.0..=100.0).contains(&c.binary_accuracy));
        }
    }

    #[test]
    fn frame_index_round_trips(views in 1usize..200, hours in 1usize..12, pick in any::<prop::sample::Index>()) {
        let f = pick.index(views * hours);
        let (h, v) = decode_frame(f, views);
        prop_assert!(h < hours && v < views);
        prop_assert_eq!(frame_index(h, v, views), f);
    }

    #[test]
    fn plan_is_a_product(g in 0usize..100, v in 0usize..200, h in 0usize..20, e in 0usize..20) {
        prop_assert_eq!(plan_dataset(g, v, h, e), g * v * h * e);
    }

    #[test]
    fn sun_stays_up_and_south(hour in 8.0..=17.0f64) {
        let s = sun_state(hour).unwrap();
        prop_assert!(s.direction.y <= 0.0);
        prop_assert!(s.direction.z > 0.0);
        let mirror = sun_state(25.0 - hour).unwrap();
        prop_assert!((s.direction.x + mirror.direction.x).abs() < 1e-12);
        prop_assert!((s.direction.y - mirror.direction.y).abs() < 1e-12);
        prop_assert!((s.direction.z - mirror.direction.z).abs() < 1e-12);
    }
}
