//! The eight colors of people and who is friends with whom.

use std::fmt;
use std::str::FromStr;

use fasncl_core::SimpleGraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Color {
    Blue,
    LightBlue,
    Red,
    LightRed,
    Green,
    White,
    Orange,
    Violet,
}

impl Color {
    pub const ALL: [Color; 8] = [
        Color::Blue,
        Color::LightBlue,
        Color::Red,
        Color::LightRed,
        Color::Green,
        Color::White,
        Color::Orange,
        Color::Violet,
    ];

    pub const COUNT: usize = 8;

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Color> {
        Color::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "BLUE",
            Color::LightBlue => "LIGHT_BLUE",
            Color::Red => "RED",
            Color::LightRed => "LIGHT_RED",
            Color::Green => "GREEN",
            Color::White => "WHITE",
            Color::Orange => "ORANGE",
            Color::Violet => "VIOLET",
        }
    }

    /// The corridor color a heavy token travels through.
    pub fn light(self) -> Option<Color> {
        match self {
            Color::Blue | Color::LightBlue => Some(Color::LightBlue),
            Color::Red | Color::LightRed => Some(Color::LightRed),
            _ => None,
        }
    }

    /// The token color that travels through a light corridor.
    pub fn heavy(self) -> Option<Color> {
        match self {
            Color::LightBlue => Some(Color::Blue),
            Color::LightRed => Some(Color::Red),
            _ => None,
        }
    }

    pub fn is_light(self) -> bool {
        matches!(self, Color::LightBlue | Color::LightRed)
    }

    /// Blue family to red family; other colors unchanged.
    pub fn blue_to_red(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::LightBlue => Color::LightRed,
            c => c,
        }
    }

    /// Graphviz fill color.
    pub fn fill(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::LightBlue => "lightblue",
            Color::Red => "red",
            Color::LightRed => "pink",
            Color::Green => "green",
            Color::White => "white",
            Color::Orange => "orange",
            Color::Violet => "violet",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown color {0:?}")]
pub struct UnknownColor(pub String);

impl FromStr for Color {
    type Err = UnknownColor;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace(['-', ' '], "_");
        Color::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| UnknownColor(s.to_string()))
    }
}

/// Friendships between distinct colors.
const FRIEND_PAIRS: [(Color, Color); 7] = [
    (Color::LightBlue, Color::Blue),
    (Color::Blue, Color::Orange),
    (Color::LightRed, Color::Red),
    (Color::Red, Color::Orange),
    (Color::Orange, Color::Violet),
    (Color::Orange, Color::Green),
    (Color::Green, Color::White),
];

/// Symmetric friendship predicate on colors. Every color is friends with
/// itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorRelation {
    matrix: [[bool; Color::COUNT]; Color::COUNT],
}

impl ColorRelation {
    pub const fn standard() -> Self {
        let mut matrix = [[false; Color::COUNT]; Color::COUNT];
        let mut i = 0;
        while i < Color::COUNT {
            matrix[i][i] = true;
            i += 1;
        }
        let mut k = 0;
        while k < FRIEND_PAIRS.len() {
            let (a, b) = FRIEND_PAIRS[k];
            matrix[a as usize][b as usize] = true;
            matrix[b as usize][a as usize] = true;
            k += 1;
        }
        ColorRelation { matrix }
    }

    #[inline]
    pub fn friends(&self, a: Color, b: Color) -> bool {
        self.matrix[a.index()][b.index()]
    }

    pub fn matrix(&self) -> &[[bool; Color::COUNT]; Color::COUNT] {
        &self.matrix
    }

    /// The relation as a graph on the eight colors, loops omitted.
    pub fn pairs(&self) -> Vec<(Color, Color)> {
        let mut out = Vec::new();
        for a in Color::ALL {
            for b in Color::ALL {
                if a < b && self.friends(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub const RELATION: ColorRelation = ColorRelation::standard();

#[inline]
pub fn friendship(a: Color, b: Color) -> bool {
    RELATION.friends(a, b)
}

/// People graph: person `i` has color `colors[i]`, and two distinct people
/// are adjacent iff their colors are friends.
pub fn build_people_graph(colors: &[Color]) -> SimpleGraph {
    let mut edges = Vec::new();
    for (i, &a) in colors.iter().enumerate() {
        for (j, &b) in colors.iter().enumerate().skip(i + 1) {
            if friendship(a, b) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    SimpleGraph::new(colors.len(), edges).expect("edges are in range and distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    #[test]
    fn friendship_examples() {
        assert!(friendship(Blue, Orange));
        assert!(!friendship(Blue, Red));
        assert!(friendship(Violet, Violet));
        assert!(!friendship(White, Orange));
        assert!(!friendship(Violet, Green));
    }

    #[test]
    fn relation_is_symmetric_and_reflexive() {
        for a in Color::ALL {
            assert!(friendship(a, a));
            for b in Color::ALL {
                assert_eq!(friendship(a, b), friendship(b, a));
            }
        }
        assert_eq!(RELATION.pairs().len(), 7);
    }

    #[test]
    fn people_graph_examples() {
        let k2 = build_people_graph(&[Blue, Blue]);
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(build_people_graph(&[Blue, Red]).edge_count(), 0);
        let p = build_people_graph(&[Blue, Orange, Violet]);
        assert_eq!(p, SimpleGraph::path(3));
    }

    #[test]
    fn names_round_trip() {
        for c in Color::ALL {
            assert_eq!(c.name().parse::<Color>().unwrap(), c);
            assert_eq!(Color::from_index(c.index()), Some(c));
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.name()));
        }
        assert_eq!("light-blue".parse::<Color>().unwrap(), LightBlue);
        assert!("teal".parse::<Color>().is_err());
    }
}
