//! Nested building → floor → wall index with per-wall opening points.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::geom::{Segment3, Vec3};

/// `building:floor:wall` address into an [`ObjectTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreePath {
    pub building: usize,
    pub floor: usize,
    pub wall: usize,
}

impl TreePath {
    pub const fn new(building: usize, floor: usize, wall: usize) -> Self {
        Self {
            building,
            floor,
            wall,
        }
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.building, self.floor, self.wall)
    }
}

impl std::str::FromStr for TreePath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected b:f:w, got `{s}`"));
        }
        let n = |p: &str| p.parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
        Ok(Self::new(n(parts[0])?, n(parts[1])?, n(parts[2])?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallNode {
    pub line: Segment3,
    pub openings: Vec<Vec3>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FloorNode {
    pub walls: Vec<WallNode>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BuildingNode {
    pub floors: Vec<FloorNode>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectTree {
    pub buildings: Vec<BuildingNode>,
}

impl ObjectTree {
    pub fn wall(&self, path: TreePath) -> Option<&WallNode> {
        self.buildings
            .get(path.building)?
            .floors
            .get(path.floor)?
            .walls
            .get(path.wall)
    }

    pub fn wall_mut(&mut self, path: TreePath) -> Option<&mut WallNode> {
        self.buildings
            .get_mut(path.building)?
            .floors
            .get_mut(path.floor)?
            .walls
            .get_mut(path.wall)
    }

    /// Every wall in `b:f:w` lexicographic order.
    pub fn walls(&self) -> impl Iterator<Item = (TreePath, &WallNode)> {
        self.buildings.iter().enumerate().flat_map(|(b, bn)| {
            bn.floors.iter().enumerate().flat_map(move |(f, fl)| {
                fl.walls
                    .iter()
                    .enumerate()
                    .map(move |(w, wall)| (TreePath::new(b, f, w), wall))
            })
        })
    }

    pub fn wall_count(&self) -> usize {
        self.walls().count()
    }

    /// Walls whose floor index is 0, across all buildings, in tree order.
    pub fn select_ground_walls(&self) -> Vec<TreePath> {
        self.walls()
            .filter(|(p, _)| p.floor == 0)
            .map(|(p, _)| p)
            .collect()
    }

    /// Path of the wall whose reference line passes within `tol` of `p`.
    pub fn host_of(&self, p: Vec3, tol: f64) -> Option<TreePath> {
        self.walls()
            .filter(|(_, w)| w.line.distance_to(p) < tol)
            .map(|(path, _)| path)
            .next()
    }

    /// Checks the structural invariants: uniform wall count per floor and
    /// every opening lying on its wall line.
    pub fn is_consistent(&self) -> bool {
        self.buildings.iter().all(|b| {
            let n0 = b.floors.first().map_or(0, |f| f.walls.len());
            b.floors.iter().all(|f| {
                f.walls.len() == n0
                    && f.walls
                        .iter()
                        .all(|w| w.openings.iter().all(|&p| w.line.distance_to(p) < 1e-9))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Six buildings; building 2 has two floors of four walls.
    fn figure_one() -> ObjectTree {
        let wall = |i: usize, z: f64| WallNode {
            line: Segment3::new(
                Vec3::new(i as f64, 0.0, z),
                Vec3::new(i as f64 + 1.0, 0.0, z),
            ),
            openings: Vec::new(),
        };
        let floor = |z: f64| FloorNode {
            walls: (0..4).map(|i| wall(i, z)).collect(),
        };
        let mut tree = ObjectTree::default();
        for b in 0..6 {
            let floors = if b == 2 {
                vec![floor(0.0), floor(3.0)]
            } else {
                vec![floor(0.0)]
            };
            tree.buildings.push(BuildingNode { floors });
        }
        tree
    }

    #[test]
    fn ground_selection_excludes_upper_floors() {
        let tree = figure_one();
        let ground = tree.select_ground_walls();
        let b2: Vec<_> = ground.iter().filter(|p| p.building == 2).collect();
        assert_eq!(
            b2,
            (0..4)
                .map(|w| TreePath::new(2, 0, w))
                .collect::<Vec<_>>()
                .iter()
                .collect::<Vec<_>>()
        );
        assert!(ground.iter().all(|p| p.floor == 0));
        assert_eq!(ground.len(), 6 * 4);
    }

    #[test]
    fn ground_selection_edge_cases() {
        assert!(ObjectTree::default().select_ground_walls().is_empty());
        let mut single = figure_one();
        single.buildings.truncate(1);
        assert_eq!(single.select_ground_walls().len(), single.wall_count());
    }

    #[test]
    fn path_addresses_one_wall() {
        let tree = figure_one();
        let w = tree.wall(TreePath::new(2, 1, 3)).unwrap();
        assert_eq!(w.line.start.z, 3.0);
        assert!(tree.wall(TreePath::new(1, 1, 0)).is_none());
        assert_eq!("2:0:3".parse::<TreePath>().unwrap(), TreePath::new(2, 0, 3));
        assert_eq!(TreePath::new(2, 0, 3).to_string(), "2:0:3");
    }
}
