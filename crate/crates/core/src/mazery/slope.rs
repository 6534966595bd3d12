use num_traits::{One, Zero};

use crate::geometry::{Point, Rational};

/// Whether some `v'` with `0 <= v_d - v'_d < 1` has
/// `sigma_x <= slope(u, v') <= 1 / sigma_y`.
///
/// With `a = v0 - u0`, `b = v1 - u1`, the slopes attained over that box form
/// the open interval `((b-1)/a, b/(a-1))` (unbounded above when `a = 1`),
/// since slope is monotone in each coordinate and only the far corner is
/// excluded. Feasibility is then an exact comparison of interval ends.
pub fn slope_condition(u: Point, v: Point, sigma_x: Rational, sigma_y: Rational) -> bool {
    let (a, b) = (v.x - u.x, v.y - u.y);
    if a < 1 || b < 1 || sigma_y <= Rational::zero() {
        return false;
    }
    let upper_cap = Rational::one() / sigma_y;
    let lower_open = Rational::new(b - 1, a);
    let upper_open = (a > 1).then(|| Rational::new(b, a - 1));
    let below_upper = |t: Rational| upper_open.is_none_or(|up| t < up);
    sigma_x <= upper_cap && lower_open < upper_cap && below_upper(sigma_x) && below_upper(lower_open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn boundary_slope_is_accepted() {
        for m in 1..8 {
            assert!(slope_condition(Point::ORIGIN, Point::new(2 * m, 1), r(1, 2 * m), r(m, 1)));
        }
    }

    #[test]
    fn steep_target_rejected() {
        assert!(!slope_condition(Point::ORIGIN, Point::new(1, 2), r(1, 2), r(2, 1)));
    }

    #[test]
    fn base_band_is_m_times_b_minus_one_below_a_up_to_2mb() {
        let m = 3;
        for b in 1..6i64 {
            for a in 1..40i64 {
                let expected = m * (b - 1) < a && a <= 2 * m * b;
                assert_eq!(slope_condition(Point::ORIGIN, Point::new(a, b), r(1, 2 * m), r(m, 1)), expected, "a={a} b={b}");
            }
        }
    }

    /// Dense grid over the unit box below `v`, pitch 1/64.
    fn grid_oracle(u: Point, v: Point, sx: Rational, sy: Rational) -> bool {
        (0..64).any(|k| {
            (0..64).any(|l| {
                let x = Rational::from_integer(v.x) - r(k, 64) - Rational::from_integer(u.x);
                let y = Rational::from_integer(v.y) - r(l, 64) - Rational::from_integer(u.y);
                if x <= Rational::zero() {
                    return false;
                }
                let s = y / x;
                sx <= s && s <= Rational::one() / sy
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_dense_grid(
            a in 1i64..12, b in 1i64..12, kx in 2i64..9, sy_num in 2i64..9, sy_den in 1i64..3,
        ) {
            let sx = r(1, kx);
            let sy = r(sy_num, sy_den);
            prop_assume!(sx * sy < Rational::one());
            let u = Point::new(3, 5);
            let v = Point::new(3 + a, 5 + b);
            prop_assert_eq!(slope_condition(u, v, sx, sy), grid_oracle(u, v, sx, sy));
        }

        #[test]
        fn pre_hole_points_satisfy_slope_conditions(
            a in 0i64..50, u in 0i64..30, dv in 1i64..30, kx in 2i64..12, sy_num in 2i64..12, sy_den in 1i64..4,
        ) {
            // <a, u> and <b, v> with b = a + ceil(sigma_y (v - u)).
            let sx = r(1, kx);
            let sy = r(sy_num, sy_den);
            prop_assume!(sx * sy < Rational::one());
            let v = u + dv;
            let b = a + (sy * Rational::from_integer(dv)).ceil().to_integer();
            prop_assert!(slope_condition(Point::new(a, u), Point::new(b, v), sx, sy));
        }
    }
}
