use crate::error::{BasePathClause, Error, Result};
use crate::geometry::{Point, Rational};
use crate::sequence::BinarySequence;

use super::slope_condition;

/// Anchors `0 <= s_1 < ... < s_{b-1} < a` with `s_1 <= 2m`,
/// `s_i + m <= s_{i+1} <= s_i + 2m` and `s_{b-1} + m < a <= s_{b-1} + 2m`.
///
/// Starts from the all-minimal schedule `s_i = m(i-1)` and raises the tail
/// just enough for the last window to reach `a`. Requires `m(b-1) < a <= 2mb`.
pub(crate) fn anchor_schedule(a: i64, b: i64, m: i64) -> Vec<i64> {
    let count = (b - 1).max(0) as usize;
    let mut s: Vec<i64> = (0..count as i64).map(|i| m * i).collect();
    if let Some(last) = s.last_mut() {
        *last = (*last).max(a - 2 * m);
    }
    for i in (0..count.saturating_sub(1)).rev() {
        s[i] = s[i].max(s[i + 1] - 2 * m);
    }
    s
}

/// Explicit path from `u` to `v` in the grid graph with step bound `3m`,
/// for a hop rectangle that meets the base slope conditions
/// (`sigma_x = 1/2m`, `sigma_y = m`).
///
/// Returns the points `<a_j, j>` for rows `u.y + 1 ..= v.y`; the last one is
/// `v`. Each `a_j` is the smallest position in `]s_j, s_j + m]` with
/// `X(a_j) = Y(j)`, which exists because `X` has no run of `m` equal symbols
/// in the x-projection.
pub fn construct_base_path(u: Point, v: Point, x: &BinarySequence, y: &BinarySequence, m: usize) -> Result<Vec<Point>> {
    let fail = |c| Err(Error::BasePath(c));
    if m == 0 {
        return Err(Error::ZeroStep);
    }
    if !(u.x < v.x && u.y < v.y) || u.x < 0 || u.y < 0 {
        return fail(BasePathClause::NotIncreasing);
    }
    if v.x as usize > x.len() || v.y as usize > y.len() {
        return fail(BasePathClause::OutOfRange);
    }
    let mi = m as i64;
    if !slope_condition(u, v, Rational::new(1, 2 * mi), Rational::from_integer(mi)) {
        return fail(BasePathClause::Slope);
    }
    let mut run = 0;
    for i in u.x + 1..=v.x {
        run = if i > u.x + 1 && x.get(i as usize) == x.get(i as usize - 1) { run + 1 } else { 1 };
        if run >= mi {
            return fail(BasePathClause::WallPresent { left: i - mi, right: i });
        }
    }
    if x.get(v.x as usize) != y.get(v.y as usize) {
        return fail(BasePathClause::CornerMismatch);
    }

    let (a, b) = (v.x - u.x, v.y - u.y);
    let anchors = anchor_schedule(a, b, mi);
    let mut path = Vec::with_capacity(b as usize);
    for (j, s) in anchors.iter().enumerate() {
        let row = u.y + j as i64 + 1;
        let want = y.get(row as usize);
        let offset = (s + 1..=s + mi)
            .find(|&off| x.get((u.x + off) as usize) == want)
            .expect("window of m symbols without a run of length m holds both symbols");
        path.push(Point::new(u.x + offset, row));
    }
    path.push(v);
    Ok(path)
}
