//! Promotion of cleanness to the next level.

use crate::error::Side;
use crate::geometry::{Interval, Point, Rect};
use crate::mazery::WallValue;

/// Whether the `side` endpoint of `interval` stays clean one level up: it
/// must be clean now, and `interval` may contain no wall whose near end is
/// closer to that endpoint than `Φ/3`. Passing barriers instead of walls
/// gives strong cleanness.
pub fn promote_cleanness(interval: &Interval, side: Side, walls: &[WallValue], phi: f64, level_clean: bool) -> bool {
    level_clean
        && walls.iter().filter(|w| interval.contains_body(&w.body)).all(|w| {
            let gap = match side {
                Side::Right => interval.right - w.right(),
                Side::Left => w.left() - interval.left,
            };
            gap as f64 >= phi / 3.0
        })
}

/// Max-norm distance from `u` to the closed rectangle `r`.
pub fn point_rect_distance(u: Point, r: &Rect) -> i64 {
    let axis = |t: i64, lo: i64, hi: i64| if t < lo { lo - t } else if t > hi { t - hi } else { 0 };
    axis(u.x, r.lower_left.x, r.upper_right.x).max(axis(u.y, r.lower_left.y, r.upper_right.y))
}

/// Trap-cleanness of a corner `u` of `q` one level up: trap-clean now, and
/// every trap inside `q` at distance at least `Γ` from `u`.
pub fn promote_trap_cleanness(u: Point, q: &Rect, traps: &[Rect], gamma: f64, level_clean: bool) -> bool {
    level_clean
        && traps
            .iter()
            .filter(|t| q.contains_rect(t.lower_left, t.upper_right))
            .all(|t| point_rect_distance(u, t) as f64 >= gamma)
}
