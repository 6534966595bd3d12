//! Compound walls: a light wall followed within distance `Φ` by another wall
//! (or a wall followed by a light one) merges into a single barrier whose
//! rank decreases with the logarithm of the gap.

use serde::Serialize;

use crate::geometry::Interval;
use crate::mazery::{WallKind, WallValue};

/// `i = d` for `d ∈ {0, 1}`, otherwise `⌊log_λ d⌋ = ⌊log₂ d²⌋`.
pub fn distance_index(d: i64) -> i64 {
    assert!(d >= 0, "negative distance");
    if d <= 1 {
        d
    } else {
        let sq = (d as u128) * (d as u128);
        127 - sq.leading_zeros() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompoundType {
    pub r1: i64,
    pub r2: i64,
    pub i: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompoundWall {
    pub first: WallValue,
    pub second: WallValue,
    pub distance: i64,
    #[serde(rename = "type")]
    pub ty: CompoundType,
    pub rank: i64,
    /// Both constituents are walls separated by a hop; otherwise a barrier.
    pub is_wall: bool,
    pub pass: u8,
}

impl CompoundWall {
    fn join(first: WallValue, second: WallValue, first_is_wall: bool, walls: &[WallValue], pass: u8) -> Self {
        let distance = second.left() - first.right();
        let ty = CompoundType { r1: first.rank, r2: second.rank, i: distance_index(distance) };
        let gap = Interval::right_closed(first.right(), second.left());
        let gap_is_hop = distance == 0 || walls.iter().all(|w| w.orientation != first.orientation || w.body.disjoint(&gap));
        CompoundWall {
            first,
            second,
            distance,
            ty,
            rank: ty.r1 + ty.r2 - ty.i,
            is_wall: first_is_wall && gap_is_hop,
            pass,
        }
    }

    /// Smallest right-closed interval containing both bodies.
    pub fn body(&self) -> Interval {
        Interval::right_closed(self.first.left(), self.second.right())
    }

    pub fn as_wall(&self) -> WallValue {
        WallValue { body: self.body(), rank: self.rank, orientation: self.first.orientation, kind: WallKind::Compound }
    }
}

/// All compounds of `walls` at gap `d <= phi`: first every `(W₁ light, W₂)`
/// pair, then every `(W₁, W₂ light)` pair where `W₁` may itself be a
/// first-pass compound. A wall is light when its rank is below `r_star`.
/// Pairs already formed in the first pass are not repeated.
pub fn compound_walls(walls: &[WallValue], phi: f64, r_star: f64) -> Vec<CompoundWall> {
    let light = |w: &WallValue| (w.rank as f64) < r_star;
    let fits = |a: &WallValue, b: &WallValue| {
        a.orientation == b.orientation && b.left() >= a.right() && ((b.left() - a.right()) as f64) <= phi
    };
    let mut first_pass = Vec::new();
    for a in walls.iter().filter(|w| light(w)) {
        for b in walls {
            if fits(a, b) {
                first_pass.push(CompoundWall::join(*a, *b, true, walls, 1));
            }
        }
    }
    let mut out = first_pass.clone();
    let firsts = walls.iter().map(|w| (*w, true, false)).chain(first_pass.iter().map(|c| (c.as_wall(), c.is_wall, true)));
    for (a, a_is_wall, a_compound) in firsts {
        for b in walls.iter().filter(|w| light(w)) {
            if !fits(&a, b) || (!a_compound && light(&a)) {
                continue;
            }
            out.push(CompoundWall::join(a, *b, a_is_wall, walls, 2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mazery::Orientation;
    use proptest::prelude::*;

    fn wall(l: i64, r: i64, rank: i64) -> WallValue {
        WallValue::new(l, r, rank, Orientation::Vertical, WallKind::BaseRun)
    }

    #[test]
    fn index_rule() {
        assert_eq!(distance_index(0), 0);
        assert_eq!(distance_index(1), 1);
        assert_eq!(distance_index(2), 2);
        assert_eq!(distance_index(3), 3);
        assert_eq!(distance_index(4), 4);
        assert_eq!(distance_index(5), 4);
        assert_eq!(distance_index(6), 5);
        assert_eq!(distance_index(1 << 20), 40);
    }

    /// Independent evaluation of `⌊log_{√2} d⌋` for `d >= 2`.
    fn index_oracle(d: i64) -> i64 {
        let mut i = 0;
        let mut p: u128 = 1; // λ^{2k} = 2^k, so compare d² against 2^i
        while p * 2 <= (d as u128) * (d as u128) {
            p *= 2;
            i += 1;
        }
        i
    }

    #[test]
    fn adjacent_and_power_gaps() {
        let cs = compound_walls(&[wall(0, 5, 10), wall(5, 9, 12)], 8.0, 15.0);
        let c = cs.iter().find(|c| c.pass == 1).unwrap();
        assert_eq!((c.ty.i, c.rank), (0, 22));
        let cs = compound_walls(&[wall(0, 5, 10), wall(9, 12, 12)], 8.0, 11.0);
        assert_eq!(cs.len(), 1);
        assert_eq!((cs[0].distance, cs[0].ty.i, cs[0].rank), (4, 4, 18));
        assert!(cs[0].is_wall);
    }

    #[test]
    fn gap_with_a_wall_gives_a_barrier() {
        let ws = [wall(0, 5, 10), wall(6, 8, 30), wall(9, 12, 30)];
        let cs = compound_walls(&ws, 8.0, 11.0);
        let c = cs.iter().find(|c| c.second.left() == 9).unwrap();
        assert!(!c.is_wall);
        assert!(cs.iter().find(|c| c.second.left() == 6).unwrap().is_wall);
    }

    #[test]
    fn second_pass_allows_heavy_first() {
        let cs = compound_walls(&[wall(0, 5, 30), wall(7, 9, 10)], 8.0, 20.0);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].pass, 2);
        // A heavy pair never compounds.
        assert!(compound_walls(&[wall(0, 5, 30), wall(7, 9, 30)], 8.0, 20.0).is_empty());
    }

    #[test]
    fn light_pairs_are_not_duplicated() {
        let cs = compound_walls(&[wall(0, 5, 10), wall(7, 9, 10)], 8.0, 20.0);
        let direct: Vec<_> = cs.iter().filter(|c| c.first.kind == WallKind::BaseRun).collect();
        assert_eq!(direct.len(), 1);
    }

    proptest! {
        #[test]
        fn ranks_obey_the_law(
            layout in proptest::collection::vec((0i64..200, 1i64..20, 5i64..40), 1..12),
            phi in 2.0f64..64.0,
            r_star in 5.0f64..40.0,
        ) {
            let walls: Vec<_> = layout.iter().map(|&(l, s, r)| wall(l, l + s, r)).collect();
            let log_phi = 2.0 * phi.log2();
            for c in compound_walls(&walls, phi, r_star) {
                let i = if c.distance <= 1 { c.distance } else { index_oracle(c.distance) };
                prop_assert_eq!(c.rank, c.ty.r1 + c.ty.r2 - i);
                prop_assert!(c.rank as f64 >= (c.ty.r1 + c.ty.r2) as f64 - log_phi - 1e-9);
                prop_assert!(c.rank <= c.ty.r1 + c.ty.r2);
                prop_assert!(c.distance as f64 <= phi);
                prop_assert!((c.first.rank as f64) < r_star || (c.second.rank as f64) < r_star);
            }
        }
    }
}
