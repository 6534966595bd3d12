use crate::error::{Error, Result, Side};
use crate::geometry::Interval;
use crate::sequence::BinarySequence;

use super::{base_rank, Orientation, WallKind, WallValue};

/// Maximal constant runs as 1-based inclusive `(start, end)` pairs.
fn runs(seq: &BinarySequence) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 1;
    for i in 2..=seq.len() + 1 {
        if i > seq.len() || seq.get(i) != seq.get(start) {
            out.push((start, i - 1));
            start = i;
        }
    }
    out
}

/// Every `]i, i+l]` with `m <= l < 2m` on which `seq` is constant, sorted by
/// `(left, size)`. All carry the level-1 rank `2m`.
pub fn find_walls(seq: &BinarySequence, m: usize, orientation: Orientation) -> Vec<WallValue> {
    assert!(m >= 1, "m must be positive");
    let rank = base_rank(m);
    let mut walls = Vec::new();
    for (start, end) in runs(seq) {
        let run_len = end + 1 - start;
        if run_len < m {
            continue;
        }
        let (first, last) = (start as i64 - 1, end as i64);
        for left in first..=last - m as i64 {
            for size in m as i64..2 * m as i64 {
                if left + size > last {
                    break;
                }
                walls.push(WallValue::new(left, left + size, rank, orientation, WallKind::BaseRun));
            }
        }
    }
    walls.sort_by_key(|w| (w.left(), w.size()));
    walls
}

/// An interval is external when no wall body intersects it.
pub fn is_external(interval: &Interval, walls: &[WallValue]) -> bool {
    walls.iter().all(|w| w.body.disjoint(interval))
}

fn left_surround(left: i64, delta: i64) -> Interval {
    Interval::right_closed((left - delta).max(-1), left)
}

/// Surrounded by external intervals of size `>= delta` (or one reaching the
/// start of the line on the left).
pub fn is_dominant(wall: &WallValue, walls: &[WallValue], delta: i64) -> bool {
    let delta = delta.max(1);
    is_external(&left_surround(wall.left(), delta), walls)
        && is_external(&Interval::right_closed(wall.right(), wall.right() + delta), walls)
}

pub fn find_dominant_walls(walls: &[WallValue], delta: i64) -> Vec<WallValue> {
    let out: Vec<WallValue> = walls.iter().filter(|w| is_dominant(w, walls, delta)).copied().collect();
    for d in &out {
        debug_assert!(
            walls.iter().all(|w| w.body.disjoint(&d.body) || d.body.contains_body(&w.body)),
            "dominant wall {} does not contain an intersecting wall",
            d.body
        );
    }
    out
}

/// Maximal external intervals inside `]-1, len]`, i.e. the gaps left by the
/// union of the wall bodies. Empty gaps are omitted.
pub fn external_gaps(walls: &[WallValue], len: i64) -> Vec<Interval> {
    let mut bodies: Vec<(i64, i64)> = walls.iter().map(|w| (w.left(), w.right())).collect();
    bodies.sort_unstable();
    let mut gaps = Vec::new();
    let mut cursor = -1;
    for (l, r) in bodies {
        if l > cursor {
            gaps.push(Interval::right_closed(cursor, l));
        }
        cursor = cursor.max(r);
    }
    if len > cursor {
        gaps.push(Interval::right_closed(cursor, len));
    }
    gaps
}

/// Intervals lying between consecutive qualifying maximal external
/// intervals (size `>= delta`, or starting at `-1`). A trailing gap shorter
/// than `delta` is treated as the truncation of an unbounded external interval.
pub fn span_clusters(walls: &[WallValue], len: i64, delta: i64) -> Vec<Interval> {
    if walls.is_empty() {
        return Vec::new();
    }
    let last_right = walls.iter().map(|w| w.right()).max().unwrap_or(-1);
    // The gap starting at -1 always exists since wall bodies start at >= 0.
    let separators: Vec<Interval> = external_gaps(walls, len)
        .into_iter()
        .filter(|g| g.left == -1 || g.size() >= delta)
        .collect();
    let mut out = Vec::new();
    for (k, sep) in separators.iter().enumerate() {
        let start = sep.right;
        let end = separators.get(k + 1).map_or(last_right, |n| n.left);
        if end > start && walls.iter().any(|w| w.left() >= start && w.right() <= end) {
            out.push(Interval::right_closed(start, end));
        }
    }
    out
}

fn constant_on(seq: &BinarySequence, left: i64, right: i64) -> bool {
    if left < 0 || right as usize > seq.len() || right <= left {
        return false;
    }
    let first = seq.get(left as usize + 1);
    (left as usize + 1..=right as usize).all(|i| seq.get(i) == first)
}

/// Greedy spanning sequence of neighbour walls of size `m` for an interval
/// surrounded by maximal external intervals of size `>= delta`.
///
/// Starts with the size-`m` wall at the left end, repeatedly takes the closest
/// disjoint size-`m` wall ending at least `m` before the right end, and closes
/// with the size-`m` wall at the right end. An interval shorter than `2m` is
/// returned as a single wall.
pub fn spanning_sequence(
    interval: &Interval,
    walls: &[WallValue],
    seq: &BinarySequence,
    m: usize,
    delta: i64,
) -> Result<Vec<WallValue>> {
    let (left, right) = (interval.left, interval.right);
    let mi = m as i64;
    let structure = |side, reason: &str| Error::Structure { side, reason: reason.to_string() };
    let delta = delta.max(1);
    if !is_external(&left_surround(left, delta), walls) {
        return Err(structure(Side::Left, "no external interval of size >= delta on the left"));
    }
    if !walls.iter().any(|w| w.body.intersects(&Interval::right_closed(left, left + 1))) {
        return Err(structure(Side::Left, "left external interval is not maximal"));
    }
    if !is_external(&Interval::right_closed(right, right + delta), walls) {
        return Err(structure(Side::Right, "no external interval of size >= delta on the right"));
    }
    if right < seq.len() as i64 && !walls.iter().any(|w| w.body.intersects(&Interval::right_closed(right - 1, right))) {
        return Err(structure(Side::Right, "right external interval is not maximal"));
    }
    let rank = base_rank(m);
    let orientation = walls.first().map_or(Orientation::Vertical, |w| w.orientation);
    let wall = |l: i64, r: i64| WallValue::new(l, r, rank, orientation, WallKind::BaseRun);

    if interval.size() < 2 * mi {
        if interval.size() >= mi && constant_on(seq, left, right) {
            return Ok(vec![wall(left, right)]);
        }
        return Err(structure(Side::Left, "short interval is not itself a wall"));
    }
    if !constant_on(seq, left, left + mi) {
        return Err(structure(Side::Left, "no size-m wall at the left end"));
    }
    if !constant_on(seq, right - mi, right) {
        return Err(structure(Side::Right, "no size-m wall at the right end"));
    }
    let mut out = vec![wall(left, left + mi)];
    let mut cursor = left + mi;
    'grow: loop {
        let mut start = cursor;
        while start + mi <= right - mi {
            if constant_on(seq, start, start + mi) {
                out.push(wall(start, start + mi));
                cursor = start + mi;
                continue 'grow;
            }
            start += 1;
        }
        break;
    }
    out.push(wall(right - mi, right));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mazery::interval_is_hop;
    use proptest::prelude::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    fn bodies(ws: &[WallValue]) -> Vec<(i64, i64)> {
        ws.iter().map(|w| (w.left(), w.right())).collect()
    }

    #[test]
    fn alternating_has_no_walls() {
        assert!(find_walls(&seq("0101010101"), 2, Orientation::Vertical).is_empty());
    }

    #[test]
    fn constant_run_of_four() {
        // Brute force: all ]i, i+l] inside ]0,4] with 2 <= l < 4.
        let ws = find_walls(&seq("0000"), 2, Orientation::Vertical);
        let mut expected = Vec::new();
        for i in 0..=4i64 {
            for l in 2..4i64 {
                if i + l <= 4 {
                    expected.push((i, i + l));
                }
            }
        }
        expected.sort_by_key(|&(a, b)| (a, b - a));
        assert_eq!(bodies(&ws), expected);
        assert_eq!(ws.len(), 5);
        assert!(ws.iter().all(|w| w.rank == 4));
    }

    #[test]
    fn no_walls_means_everything_external() {
        assert!(is_external(&Interval::right_closed(0, 100), &[]));
    }

    #[test]
    fn isolated_run_is_dominant() {
        // m = 3, a single run of three ones at 11..=13 inside alternation.
        let x = seq("0101010101011101010101010");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        assert_eq!(bodies(&ws), vec![(11, 14)]);
        assert_eq!(find_dominant_walls(&ws, 4), ws);
    }

    #[test]
    fn overlapping_walls_not_dominant_unless_containing() {
        // Run of five zeros with m = 3: walls ]0,3],]0,4],]0,5],]1,4],]1,5],]2,5].
        let x = seq("00000101010");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        let dom = find_dominant_walls(&ws, 2);
        assert_eq!(bodies(&dom), vec![(0, 5)]);
    }

    #[test]
    fn short_interval_is_itself_a_wall() {
        let x = seq("1010001010");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        let iv = Interval::right_closed(3, 6);
        let span = spanning_sequence(&iv, &ws, &x, 3, 2).unwrap();
        assert_eq!(bodies(&span), vec![(3, 6)]);
    }

    #[test]
    fn two_runs_separated_by_a_long_gap() {
        // m = 3: 000 at 3..=5, gap 6..=9 without runs, 111 at 10..=12.
        let x = seq("01000101011101");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        assert_eq!(bodies(&ws), vec![(2, 5), (9, 12)]);
        let iv = Interval::right_closed(2, 12);
        // delta 1 on both sides keeps the surroundings external.
        let span = spanning_sequence(&iv, &ws, &x, 3, 1).unwrap();
        assert_eq!(bodies(&span), vec![(2, 5), (9, 12)]);
    }

    #[test]
    fn precondition_failure_names_side() {
        let x = seq("01000101011101");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        let err = spanning_sequence(&Interval::right_closed(1, 12), &ws, &x, 3, 1).unwrap_err();
        assert!(matches!(err, Error::Structure { side: Side::Left, .. }));
        let err = spanning_sequence(&Interval::right_closed(2, 11), &ws, &x, 3, 1).unwrap_err();
        assert!(matches!(err, Error::Structure { side: Side::Right, .. }));
    }

    #[test]
    fn gaps_and_clusters() {
        let x = seq("01000101011101");
        let ws = find_walls(&x, 3, Orientation::Vertical);
        let gaps = external_gaps(&ws, 14);
        assert_eq!(gaps, vec![Interval::right_closed(-1, 2), Interval::right_closed(5, 9), Interval::right_closed(12, 14)]);
        assert_eq!(span_clusters(&ws, 14, 4), vec![Interval::right_closed(2, 5), Interval::right_closed(9, 12)]);
        assert_eq!(span_clusters(&ws, 14, 6), vec![Interval::right_closed(2, 12)]);
    }

    fn run_layout() -> impl Strategy<Value = (String, usize)> {
        (2usize..5).prop_flat_map(|m| {
            let piece = prop_oneof![
                3 => Just("01".to_string()),
                3 => Just("10".to_string()),
                2 => (m..2 * m + 3).prop_map(|l| "0".repeat(l)),
                2 => (m..2 * m + 3).prop_map(|l| "1".repeat(l)),
            ];
            (proptest::collection::vec(piece, 1..12).prop_map(|v| v.concat()), Just(m))
        })
    }

    proptest! {
        #[test]
        fn walls_are_constant_and_sized((text, m) in run_layout()) {
            let x = seq(&text);
            for w in find_walls(&x, m, Orientation::Vertical) {
                prop_assert!(w.size() >= m as i64 && w.size() < 2 * m as i64);
                prop_assert!(constant_on(&x, w.left(), w.right()));
            }
        }

        #[test]
        fn dominant_walls_contain_intersecting_walls((text, m) in run_layout(), delta in 1i64..6) {
            let x = seq(&text);
            let ws = find_walls(&x, m, Orientation::Vertical);
            for d in find_dominant_walls(&ws, delta) {
                for w in &ws {
                    prop_assert!(w.body.disjoint(&d.body) || d.body.contains_body(&w.body));
                }
            }
        }

        #[test]
        fn spanning_sequences_are_neighbour_walls((text, m) in run_layout(), delta in 1i64..8) {
            let x = seq(&text);
            let ws = find_walls(&x, m, Orientation::Vertical);
            for cluster in span_clusters(&ws, x.len() as i64, delta) {
                let span = spanning_sequence(&cluster, &ws, &x, m, delta).unwrap();
                prop_assert_eq!(span.first().unwrap().left(), cluster.left);
                prop_assert_eq!(span.last().unwrap().right(), cluster.right);
                for pair in span.windows(2) {
                    prop_assert!(pair[0].right() <= pair[1].left());
                    let gap = Interval::right_closed(pair[0].right(), pair[1].left());
                    prop_assert!(interval_is_hop(&gap, &x, m));
                }
            }
        }
    }
}
