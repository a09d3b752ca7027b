use serde::{Deserialize, Serialize};

use super::error::FootprintError;
use crate::geom::{polygon_self_intersects, signed_area, Vec2};

/// Closed, counter-clockwise, simple building outline in metres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Footprint {
    vertices: Vec<Vec2>,
}

impl Footprint {
    /// Validate and canonicalise a raw outline: consecutive duplicates
    /// (including a repeated closing point) are dropped and clockwise input
    /// is reversed.
    pub fn normalize(raw: &[Vec2]) -> Result<Self, FootprintError> {
        if raw.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(FootprintError::NonFinite);
        }
        let mut pts: Vec<Vec2> = Vec::with_capacity(raw.len());
        for &p in raw {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(FootprintError::TooFewPoints(pts.len()));
        }
        let area = signed_area(&pts);
        if area == 0.0 {
            return Err(FootprintError::ZeroArea);
        }
        if polygon_self_intersects(&pts) {
            return Err(FootprintError::SelfIntersecting);
        }
        if area < 0.0 {
            pts.reverse();
        }
        Ok(Self { vertices: pts })
    }

    pub fn rectangle(width: f64, depth: f64) -> Result<Self, FootprintError> {
        let (hx, hy) = (width / 2.0, depth / 2.0);
        Self::normalize(&[
            Vec2::new(-hx, -hy),
            Vec2::new(hx, -hy),
            Vec2::new(hx, hy),
            Vec2::new(-hx, hy),
        ])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (wrapping).
    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            (b - a).cross(c - b) >= 0.0
        })
    }
}

impl TryFrom<Vec<[f64; 2]>> for Footprint {
    type Error = FootprintError;

    fn try_from(raw: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        let pts: Vec<Vec2> = raw.into_iter().map(|[x, y]| Vec2::new(x, y)).collect();
        Self::normalize(&pts)
    }
}

impl From<Footprint> for Vec<[f64; 2]> {
    fn from(f: Footprint) -> Self {
        f.vertices.into_iter().map(|v| [v.x, v.y]).collect()
    }
}
