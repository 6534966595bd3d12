use crate::engine::ReachFrontier;
use crate::bitset::BitSet;
use crate::engine::frontier_step;
use crate::geometry::{Interval, Point, Rational};
use crate::sequence::BinarySequence;

use super::{Hole, Orientation, WallValue};

/// Frontiers for rows `from.y ..= to_y`, with positions restricted to
/// `]from.x, x_hi]`.
fn frontiers_in_box(x: &BinarySequence, y: &BinarySequence, step_max: usize, from: Point, x_hi: i64, to_y: i64) -> Vec<ReachFrontier> {
    let cap = x_hi as usize + 1;
    let mut rows = vec![ReachFrontier { row: from.y as usize, positions: BitSet::from_positions(cap, [from.x as usize]) }];
    for j in from.y + 1..=to_y {
        let symbol = y.get(j as usize);
        let mask = BitSet::from_positions(cap, (from.x + 1..=x_hi).filter(|&i| x.get(i as usize) == symbol).map(|i| i as usize));
        let next = frontier_step(rows.last().expect("non-empty"), &mask, step_max);
        let dead = next.is_empty();
        rows.push(next);
        if dead {
            break;
        }
    }
    rows
}

/// Leftmost, then narrowest, hole through `wall` whose interval lies inside
/// `start_range` on the other sequence and has size at most `|body| / slb`.
///
/// A vertical wall (body on `X`) is passed by a horizontal hole `]a, a+k]` of
/// `Y` when `<body.left, a> ~> <body.right, a+k>` inside the body rectangle;
/// a horizontal wall symmetrically by a vertical hole of `X`.
pub fn find_fitting_hole(
    wall: &WallValue,
    start_range: &Interval,
    x: &BinarySequence,
    y: &BinarySequence,
    slb: Rational,
    step_max: usize,
) -> Option<Hole> {
    (start_range.left.max(0)..start_range.right)
        .find_map(|a| hole_starting_at(wall, a, start_range.right, x, y, slb, step_max))
}

/// Narrowest fitting hole `]a, a+k]` through `wall` with `a + k <= limit`.
pub fn hole_starting_at(
    wall: &WallValue,
    a: i64,
    limit: i64,
    x: &BinarySequence,
    y: &BinarySequence,
    slb: Rational,
    step_max: usize,
) -> Option<Hole> {
    let body = wall.body;
    let max_size = (Rational::from_integer(body.size()) / slb).floor().to_integer();
    if a < 0 || body.left < 0 {
        return None;
    }
    match wall.orientation {
        Orientation::Vertical => {
            if body.right as usize > x.len() {
                return None;
            }
            let top = limit.min(y.len() as i64).min(a + max_size);
            if top <= a {
                return None;
            }
            let entry = Point::new(body.left, a);
            let rows = frontiers_in_box(x, y, step_max, entry, body.right, top);
            let k = (1..rows.len()).find(|&k| rows[k].contains(body.right as usize))?;
            let exit = Point::new(body.right, a + k as i64);
            Some(Hole { interval: Interval::right_closed(a, exit.y), wall: *wall, entry, exit })
        }
        Orientation::Horizontal => {
            if body.right as usize > y.len() {
                return None;
            }
            let right = limit.min(x.len() as i64).min(a + max_size);
            if right <= a {
                return None;
            }
            let entry = Point::new(a, body.left);
            let rows = frontiers_in_box(x, y, step_max, entry, right, body.right);
            if rows.len() as i64 != body.size() + 1 {
                return None;
            }
            let p = rows.last().and_then(|f| f.positions.first())?;
            let exit = Point::new(p as i64, body.right);
            Some(Hole { interval: Interval::right_closed(a, exit.x), wall: *wall, entry, exit })
        }
    }
}

/// Goodness at level 1: the entry corner must be trap-clean as the upper
/// right corner of any rectangle ending there; everything else is automatic.
pub fn is_good_hole(hole: &Hole, x: &BinarySequence, y: &BinarySequence) -> bool {
    super::cleanness(hole.entry, x, y).lower_left_trap_clean
}
