//! Lattice points, right-closed intervals and rectangles.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i64>;

/// A lattice point `<x, y>`; `x` indexes `X`, `y` indexes `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Max-norm distance.
    pub fn distance(self, other: Point) -> i64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    /// `]a, b]`
    RightClosed,
    /// `[a, b]`
    Closed,
}

/// An interval of the line; sizes are `right - left` regardless of closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
    pub closure: Closure,
}

impl Interval {
    /// `]left, right]`. Panics if `right < left` or `left < -1`.
    pub fn right_closed(left: i64, right: i64) -> Self {
        assert!(left >= -1 && left <= right, "bad interval ]{left},{right}]");
        Interval { left, right, closure: Closure::RightClosed }
    }

    pub fn closed(left: i64, right: i64) -> Self {
        assert!(left >= -1 && left <= right, "bad interval [{left},{right}]");
        Interval { left, right, closure: Closure::Closed }
    }

    pub fn size(&self) -> i64 {
        self.right - self.left
    }

    /// Lattice points of the interval.
    pub fn points(&self) -> std::ops::RangeInclusive<i64> {
        match self.closure {
            Closure::RightClosed => self.left + 1..=self.right,
            Closure::Closed => self.left..=self.right,
        }
    }

    /// Containment of a right-closed body, as subsets of the real line.
    pub fn contains_body(&self, body: &Interval) -> bool {
        self.left <= body.left && body.right <= self.right
    }

    /// Whether two intervals share a real point.
    pub fn intersects(&self, other: &Interval) -> bool {
        let lo = self.left.max(other.left);
        let hi = self.right.min(other.right);
        if lo < hi {
            return true;
        }
        // Degenerate touching only counts when both sides include the point.
        lo == hi
            && self.includes_real(lo)
            && other.includes_real(lo)
    }

    fn includes_real(&self, t: i64) -> bool {
        match self.closure {
            Closure::RightClosed => self.left < t && t <= self.right,
            Closure::Closed => self.left <= t && t <= self.right,
        }
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        !self.intersects(other)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.closure {
            Closure::RightClosed => write!(f, "]{},{}]", self.left, self.right),
            Closure::Closed => write!(f, "[{},{}]", self.left, self.right),
        }
    }
}

/// Which sides of a rectangle `Rect(u, v)` are open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Openness {
    /// `Rect(u, v) = [u0, v0] x [u1, v1]`
    Closed,
    /// `Rect->(u, v) = ]u0, v0] x [u1, v1]`
    LeftOpen,
    /// `Rect^(u, v) = [u0, v0] x ]u1, v1]`
    BottomOpen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub lower_left: Point,
    pub upper_right: Point,
    pub openness: Openness,
}

impl Rect {
    pub fn new(lower_left: Point, upper_right: Point, openness: Openness) -> Self {
        assert!(lower_left.x <= upper_right.x && lower_left.y <= upper_right.y, "corners out of order");
        Rect { lower_left, upper_right, openness }
    }

    pub fn closed(lower_left: Point, upper_right: Point) -> Self {
        Self::new(lower_left, upper_right, Openness::Closed)
    }

    pub fn x_projection(&self) -> Interval {
        let (a, b) = (self.lower_left.x, self.upper_right.x);
        match self.openness {
            Openness::LeftOpen => Interval::right_closed(a, b),
            _ => Interval::closed(a, b),
        }
    }

    pub fn y_projection(&self) -> Interval {
        let (a, b) = (self.lower_left.y, self.upper_right.y);
        match self.openness {
            Openness::BottomOpen => Interval::right_closed(a, b),
            _ => Interval::closed(a, b),
        }
    }

    /// Half-open rectangles with a degenerate open side have no points.
    pub fn is_empty(&self) -> bool {
        match self.openness {
            Openness::Closed => false,
            Openness::LeftOpen => self.lower_left.x == self.upper_right.x,
            Openness::BottomOpen => self.lower_left.y == self.upper_right.y,
        }
    }

    /// Whether the closed rectangle `[a, b]` lies inside this one.
    pub fn contains_rect(&self, a: Point, b: Point) -> bool {
        let (xp, yp) = (self.x_projection(), self.y_projection());
        let inside = |iv: &Interval, lo: i64, hi: i64| match iv.closure {
            Closure::RightClosed => iv.left < lo && hi <= iv.right,
            Closure::Closed => iv.left <= lo && hi <= iv.right,
        };
        inside(&xp, a.x, b.x) && inside(&yp, a.y, b.y)
    }
}
