//! The six segmentation classes and their fixed label colors.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticClass {
    Wall,
    Window,
    Door,
    Column,
    Roof,
    Background,
}

impl SemanticClass {
    /// All classes in label-index order.
    pub const ALL: [SemanticClass; 6] = [
        SemanticClass::Wall,
        SemanticClass::Window,
        SemanticClass::Door,
        SemanticClass::Column,
        SemanticClass::Roof,
        SemanticClass::Background,
    ];

    pub const COUNT: usize = 6;

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            SemanticClass::Wall => "wall",
            SemanticClass::Window => "window",
            SemanticClass::Door => "door",
            SemanticClass::Column => "column",
            SemanticClass::Roof => "roof",
            SemanticClass::Background => "background",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for SemanticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class → RGB label colors. Bijective by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPalette {
    colors: [[u8; 3]; SemanticClass::COUNT],
}

impl Default for ClassPalette {
    fn default() -> Self {
        Self {
            colors: [
                [255, 0, 0],   // wall
                [0, 0, 255],   // window
                [0, 255, 0],   // door
                [255, 255, 0], // column
                [255, 0, 255], // roof
                [0, 0, 0],     // background
            ],
        }
    }
}

impl ClassPalette {
    pub fn color(&self, class: SemanticClass) -> [u8; 3] {
        self.colors[class.index()]
    }

    pub fn background(&self) -> [u8; 3] {
        self.color(SemanticClass::Background)
    }

    pub fn class_of_exact(&self, rgb: [u8; 3]) -> Option<SemanticClass> {
        self.colors
            .iter()
            .position(|&c| c == rgb)
            .and_then(SemanticClass::from_index)
    }

    pub fn colors(&self) -> &[[u8; 3]; SemanticClass::COUNT] {
        &self.colors
    }
}
