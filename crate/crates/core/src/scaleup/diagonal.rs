//! Signed vertical distance of a point above the line through `u` and `v'`.

use crate::geometry::{Point, Rational};

/// `v'` may sit anywhere in the unit box at a lattice point, so its
/// coordinates are rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl From<Point> for RationalPoint {
    fn from(p: Point) -> Self {
        RationalPoint { x: p.x.into(), y: p.y.into() }
    }
}

pub fn slope(u: Point, v_prime: RationalPoint) -> Rational {
    let dx = v_prime.x - Rational::from(u.x);
    assert!(dx > Rational::from(0), "slope needs u0 < v'0");
    (v_prime.y - Rational::from(u.y)) / dx
}

/// `d(a) = (a₁ − u₁) − slope(u, v')(a₀ − u₀)`.
pub fn diagonal_distance(u: Point, v_prime: RationalPoint, a: Point) -> Rational {
    Rational::from(a.y - u.y) - slope(u, v_prime) * Rational::from(a.x - u.x)
}

/// `h₁ < d(w) <= h₂`.
pub fn in_channel(u: Point, v_prime: RationalPoint, h1: Rational, h2: Rational, w: Point) -> bool {
    let d = diagonal_distance(u, v_prime, w);
    h1 < d && d <= h2
}
