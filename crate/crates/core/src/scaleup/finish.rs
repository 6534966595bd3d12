//! The final scale-up step: discard light structures and what they
//! dominate, keep the heavy walls and add the new ones.

use crate::geometry::Rect;
use crate::mazery::{is_dominant, WallValue};

/// Walls and traps of one level, both orientations together.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LevelStructures {
    pub walls: Vec<WallValue>,
    pub traps: Vec<Rect>,
}

/// Removes every light wall (rank below `r_star`) and every wall contained
/// in a removed light wall that was dominant (surrounding gaps `>= delta`),
/// then adds the heavy ones among `new_walls`. Current traps are replaced by
/// `new_traps`; the graph is unchanged.
pub fn finish_step(
    current: &LevelStructures,
    new_walls: &[WallValue],
    new_traps: &[Rect],
    r_star: f64,
    delta: i64,
) -> LevelStructures {
    let light = |w: &WallValue| (w.rank as f64) < r_star;
    let dominant_light: Vec<WallValue> = current
        .walls
        .iter()
        .filter(|w| light(w))
        .filter(|w| {
            let same: Vec<WallValue> = current.walls.iter().filter(|o| o.orientation == w.orientation).copied().collect();
            is_dominant(w, &same, delta)
        })
        .copied()
        .collect();
    let swallowed =
        |w: &WallValue| dominant_light.iter().any(|d| d.orientation == w.orientation && d.body.contains_body(&w.body));
    let mut walls: Vec<WallValue> = current.walls.iter().filter(|w| !light(w) && !swallowed(w)).copied().collect();
    for w in new_walls.iter().filter(|w| !light(w)) {
        if !walls.contains(w) {
            walls.push(*w);
        }
    }
    walls.sort_by_key(|w| (w.orientation as u8, w.left(), w.size(), w.rank));
    LevelStructures { walls, traps: new_traps.to_vec() }
}
