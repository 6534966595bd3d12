//! Level-1 structures of the embedding mazery: walls are constant runs of
//! length in `[m, 2m)`, there are no traps, every point is one-dimensionally
//! clean, and a point `<i, j>` is trap-clean as an upper right corner exactly
//! when `X(i) = Y(j)`. The graph is the grid graph with step bound `3m`.

mod base_path;
mod holes;
mod hops;
mod slope;
mod walls;

use serde::{Deserialize, Serialize};

use crate::geometry::{Interval, Point};

pub use base_path::construct_base_path;
pub use holes::{find_fitting_hole, hole_starting_at, is_good_hole};
pub use hops::{cleanness, hop_check, interval_is_hop, CleannessReport, OneDimClean};
pub use slope::slope_condition;
pub use walls::{
    external_gaps, find_dominant_walls, find_walls, is_dominant, is_external, spanning_sequence, span_clusters,
};

/// `x` walls live on `X` (vertical walls), `y` walls on `Y` (horizontal walls).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "v")]
    Vertical,
    #[serde(rename = "h")]
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallKind {
    BaseRun,
    Emerging,
    Compound,
}

/// A wall value: right-closed body plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WallValue {
    pub body: Interval,
    pub rank: i64,
    pub orientation: Orientation,
    pub kind: WallKind,
}

impl WallValue {
    pub fn new(left: i64, right: i64, rank: i64, orientation: Orientation, kind: WallKind) -> Self {
        WallValue { body: Interval::right_closed(left, right), rank, orientation, kind }
    }

    pub fn left(&self) -> i64 {
        self.body.left
    }

    pub fn right(&self) -> i64 {
        self.body.right
    }

    pub fn size(&self) -> i64 {
        self.body.size()
    }
}

/// JSON-lines record for wall reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    pub orientation: Orientation,
    pub left: i64,
    pub right: i64,
    pub rank: i64,
    pub kind: WallKind,
}

impl Serialize for WallValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WallRecord::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WallValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = WallRecord::deserialize(d)?;
        if r.left < -1 || r.right < r.left {
            return Err(serde::de::Error::custom("wall body must satisfy -1 <= left <= right"));
        }
        Ok(WallValue::new(r.left, r.right, r.rank, r.orientation, r.kind))
    }
}

impl From<WallValue> for WallRecord {
    fn from(w: WallValue) -> Self {
        WallRecord { orientation: w.orientation, left: w.left(), right: w.right(), rank: w.rank, kind: w.kind }
    }
}

/// A hole through a wall: `interval` lies on the other sequence, and `exit`
/// is reachable from `entry` inside the rectangle of `interval` and the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hole {
    pub interval: Interval,
    pub wall: WallValue,
    pub entry: Point,
    pub exit: Point,
}

/// Level-1 rank shared by every base wall.
pub fn base_rank(m: usize) -> i64 {
    2 * m as i64
}
