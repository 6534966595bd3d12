use serde::Serialize;

use crate::geometry::{Interval, Point, Rect};
use crate::sequence::BinarySequence;

/// One-dimensional cleanness flags of a point, per axis and side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OneDimClean {
    pub x_left: bool,
    pub x_right: bool,
    pub y_left: bool,
    pub y_right: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CleannessReport {
    pub point: Point,
    pub lower_left_trap_clean: bool,
    pub upper_right_trap_clean: bool,
    pub one_dim_clean: OneDimClean,
}

impl CleannessReport {
    /// Clean in every sense that is relevant at level 1.
    pub fn is_clean(&self) -> bool {
        let d = self.one_dim_clean;
        self.lower_left_trap_clean && self.upper_right_trap_clean && d.x_left && d.x_right && d.y_left && d.y_right
    }
}

/// Level-1 cleanness of `<i, j>`. Points on an axis carry no symbol pair and
/// are reported clean.
pub fn cleanness(point: Point, x: &BinarySequence, y: &BinarySequence) -> CleannessReport {
    let lower_left = match (x.try_get(point.x), y.try_get(point.y)) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    CleannessReport {
        point,
        lower_left_trap_clean: lower_left,
        upper_right_trap_clean: true,
        one_dim_clean: OneDimClean { x_left: true, x_right: true, y_left: true, y_right: true },
    }
}

/// Longest constant run among the symbols at positions `points`.
fn longest_run(seq: &BinarySequence, lo: i64, hi: i64) -> usize {
    let mut best = 0;
    let mut cur = 0;
    let mut prev = None;
    for i in lo..=hi {
        let s = seq.get(i as usize);
        cur = if prev == Some(s) { cur + 1 } else { 1 };
        best = best.max(cur);
        prev = Some(s);
    }
    best
}

/// An interval contains no level-1 wall iff no `m` consecutive symbols inside
/// it agree. One-dimensional cleanness is automatic, so this is the hop test.
pub fn interval_is_hop(interval: &Interval, seq: &BinarySequence, m: usize) -> bool {
    let (lo, hi) = (interval.left + 1, interval.right);
    if hi < lo {
        return true;
    }
    if lo < 1 || hi as usize > seq.len() {
        return false;
    }
    longest_run(seq, lo, hi) < m
}

/// Rectangle hop test at level 1: empty, or no vertical wall in the
/// x-projection, no horizontal wall in the y-projection, and both corners
/// clean in the rectangle (there are no traps).
pub fn hop_check(rect: &Rect, x: &BinarySequence, y: &BinarySequence, m: usize) -> bool {
    if rect.is_empty() {
        return true;
    }
    let body = |iv: Interval| Interval::right_closed(iv.left.max(-1), iv.right);
    if !interval_is_hop(&body(rect.x_projection()), x, m) || !interval_is_hop(&body(rect.y_projection()), y, m) {
        return false;
    }
    let lower = cleanness(rect.lower_left, x, y);
    let upper = cleanness(rect.upper_right, x, y);
    lower.upper_right_trap_clean && upper.lower_left_trap_clean
}
