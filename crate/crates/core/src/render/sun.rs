use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::RenderError;
use crate::geom::Vec3;

pub const FIRST_HOUR: f64 = 8.0;
pub const LAST_HOUR: f64 = 17.0;
const MIN_ALTITUDE_DEG: f64 = 10.0;
const ALTITUDE_SWING_DEG: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SunState {
    pub hour: f64,
    /// Unit vector pointing towards the sun.
    pub direction: Vec3,
    pub intensity: f64,
}

/// Horizontal bearing (unit 2D, as a 3D vector with z = 0) and altitude in
/// degrees for `hour`. The sun travels from -X to +X through negative Y.
pub fn sun_arc(hour: f64) -> (Vec3, f64) {
    let s = (hour - FIRST_HOUR) / (LAST_HOUR - FIRST_HOUR);
    let theta = (180.0 * (1.0 - s)).to_radians();
    let horizontal = Vec3::new(theta.cos(), -theta.sin().abs(), 0.0);
    let altitude = MIN_ALTITUDE_DEG + ALTITUDE_SWING_DEG * (PI * s).sin();
    (horizontal, altitude)
}

pub fn sun_state(hour: f64) -> Result<SunState, RenderError> {
    if !(FIRST_HOUR..=LAST_HOUR).contains(&hour) {
        return Err(RenderError::HourOutOfRange(hour));
    }
    let (h, altitude) = sun_arc(hour);
    let alt = altitude.to_radians();
    let direction = Vec3::new(h.x * alt.cos(), h.y * alt.cos(), alt.sin()).normalized();
    Ok(SunState {
        hour,
        direction,
        intensity: 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let (h8, a8) = sun_arc(8.0);
        assert!((h8.x + 1.0).abs() < 1e-12 && h8.y.abs() < 1e-12);
        assert!((a8 - 10.0).abs() < 1e-12);
        let (h17, a17) = sun_arc(17.0);
        assert!((h17.x - 1.0).abs() < 1e-12 && h17.y.abs() < 1e-12);
        assert!((a17 - 10.0).abs() < 1e-12);
    }

    #[test]
    fn noonish_altitude() {
        let s = sun_state(12.0).unwrap();
        let alt = s.direction.z.asin().to_degrees();
        let want = 10.0 + 50.0 * (4.0 * PI / 9.0).sin();
        assert!((alt - want).abs() < 1e-9);
        assert!((want - 59.24).abs() < 0.01);
        assert!(s.direction.y < 0.0);
    }

    #[test]
    fn arc_properties() {
        for i in 0..=90 {
            let hour = 8.0 + i as f64 * 0.1;
            let s = sun_state(hour).unwrap();
            assert!(s.direction.y <= 0.0 && s.direction.z > 0.0);
            assert!((s.direction.length() - 1.0).abs() < 1e-12);
        }
        let a = sun_state(8.0).unwrap().direction;
        let b = sun_state(17.0).unwrap().direction;
        assert!((a.x + b.x).abs() < 1e-12 && (a.y - b.y).abs() < 1e-12 && (a.z - b.z).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_hour() {
        assert!(sun_state(7.99).is_err());
        assert!(sun_state(17.5).is_err());
    }
}
