//! Traps and emerging walls. Each designation pairs an exact structural
//! event with a conditional probability; the event is decided exactly and
//! the probability is estimated by resampling the other sequence.

use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Interval, Point, Rational, Rect};
use crate::mazery::{find_walls, hole_starting_at, is_dominant, is_external, is_good_hole, Orientation, WallKind, WallValue};
use crate::sampling::{self, Estimate};
use crate::sequence::BinarySequence;

/// Fewest resampling rounds an estimator accepts.
pub const MIN_TRIALS: u64 = 100;

/// Window sizes `L₁ = 29 Δ/slb`, `L₂ = 9 Γ/slb`, `L₃ = Γ`.
pub fn window_sizes(slb: f64, delta: f64, gamma: f64) -> [f64; 3] {
    [29.0 * delta / slb, 9.0 * gamma / slb, gamma]
}

/// Minimal rectangles holding two traps with disjoint projections whose
/// lower left corners are at most `phi` apart.
pub fn uncorrelated_compound_traps(traps: &[Rect], phi: f64) -> Vec<Rect> {
    let mut out = Vec::new();
    for (k, a) in traps.iter().enumerate() {
        for b in &traps[k + 1..] {
            let disjoint = a.x_projection().disjoint(&b.x_projection()) && a.y_projection().disjoint(&b.y_projection());
            if disjoint && a.lower_left.distance(b.lower_left) as f64 <= phi {
                out.push(Rect::closed(
                    Point::new(a.lower_left.x.min(b.lower_left.x), a.lower_left.y.min(b.lower_left.y)),
                    Point::new(a.upper_right.x.max(b.upper_right.x), a.upper_right.y.max(b.upper_right.y)),
                ));
            }
        }
    }
    out
}

/// Largest number of traps with pairwise disjoint closed x projections
/// (interval scheduling by right end).
fn max_disjoint_x(traps: &[&Rect]) -> usize {
    let mut spans: Vec<(i64, i64)> = traps.iter().map(|t| (t.upper_right.x, t.lower_left.x)).collect();
    spans.sort_unstable();
    let mut count = 0;
    let mut last = i64::MIN;
    for (hi, lo) in spans {
        if lo > last {
            count += 1;
            last = hi;
        }
    }
    count
}

/// `I × [b, b+5Δ]` contains at least four traps with disjoint x projections.
pub fn detect_correlated_event(i: &Interval, b: i64, delta: i64, traps: &[Rect]) -> bool {
    let area = Rect::closed(Point::new(i.left, b), Point::new(i.right, b + 5 * delta));
    let inside: Vec<&Rect> = traps.iter().filter(|t| area.contains_rect(t.lower_left, t.upper_right)).collect();
    max_disjoint_x(&inside) >= 4
}

/// Level-1 data the missing-hole event needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MissingHoleSetting {
    pub m: usize,
    pub slb: Rational,
    /// Light means rank below this.
    pub r_star: f64,
}

impl MissingHoleSetting {
    pub fn base(m: usize, r_star: f64) -> Self {
        MissingHoleSetting { m, slb: Rational::new(1, 2 * m as i64), r_star }
    }
}

/// Some light horizontal wall `]b+Δ, b']` is passed by no good vertical hole
/// `]a₁, a₂]` with `]a₁−Δ, a₂+Δ]` inside the closed interval `i`.
pub fn detect_missing_hole_event(
    x: &BinarySequence,
    y: &BinarySequence,
    i: &Interval,
    b: i64,
    delta: i64,
    setting: &MissingHoleSetting,
) -> bool {
    let start = b + delta;
    let walls = find_walls(y, setting.m, Orientation::Horizontal);
    let candidates = walls.iter().filter(|w| w.left() == start && (w.rank as f64) < setting.r_star);
    // ]a₁−Δ, a₂+Δ] ⊆ [l, r] on lattice points: a₁ ≥ l+Δ−1, a₂ ≤ r−Δ.
    let (lo, limit) = ((i.left + delta - 1).max(0), i.right - delta);
    let step_max = 3 * setting.m;
    candidates.into_iter().any(|w| {
        !(lo..limit).any(|a| {
            hole_starting_at(w, a, limit, x, y, setting.slb, step_max).is_some_and(|h| is_good_hole(&h, x, y))
        })
    })
}

/// `Y` with the positions of `j` redrawn from `rng`.
pub fn resample(y: &BinarySequence, j: &Interval, rng: &mut impl RngCore) -> BinarySequence {
    let mut out = y.clone();
    let (lo, hi) = (j.points().start().max(&1).to_owned(), (*j.points().end()).min(y.len() as i64));
    let mut word = 0u64;
    for (n, p) in (lo..=hi).enumerate() {
        if n % 64 == 0 {
            word = rng.next_u64();
        }
        out.set(p as usize, word >> (n % 64) & 1 == 1);
    }
    out
}

/// Probability of `event(Y')` where `Y'` is `y` with `j` redrawn uniformly.
pub fn estimate_conditional<F>(y: &BinarySequence, j: &Interval, trials: u64, seed: u64, event: F) -> Result<Estimate>
where
    F: Fn(&BinarySequence) -> bool + Sync,
{
    if trials < MIN_TRIALS {
        return Err(Error::Underpowered { trials, minimum: MIN_TRIALS });
    }
    Ok(sampling::estimate(seed, trials, |rng| event(&resample(y, j, rng))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapEstimate {
    pub event: bool,
    pub estimate: Estimate,
    /// Event holds and the upper confidence bound is at most `w²`.
    pub is_trap: bool,
}

/// Decides the missing-hole event on the given sequences and estimates its
/// probability given `X(I)` by redrawing `Y([b, b+3Δ])`.
#[allow(clippy::too_many_arguments)]
pub fn estimate_missing_hole_trap(
    x: &BinarySequence,
    y: &BinarySequence,
    i: &Interval,
    b: i64,
    delta: i64,
    setting: &MissingHoleSetting,
    w_sq: f64,
    trials: u64,
    seed: u64,
) -> Result<TrapEstimate> {
    let j = Interval::closed(b, b + 3 * delta);
    let estimate = estimate_conditional(y, &j, trials, seed, |ys| detect_missing_hole_event(x, ys, i, b, delta, setting))?;
    let event = detect_missing_hole_event(x, y, i, b, delta, setting);
    Ok(TrapEstimate { event, estimate, is_trap: event && estimate.ci_high <= w_sq })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmergingEstimate {
    /// Window `I'` with the largest estimated probability.
    pub window: Interval,
    pub estimate: Estimate,
    /// Upper confidence bound above `w²` for some window.
    pub is_barrier: bool,
}

/// Scans the closed windows `I' = [u', v']` of size `window` with
/// `u' ∈ ]u, u+2Δ]`, `v' ∈ ]v−2Δ, v]` for `I = ]u, v]`, estimating the
/// probability of `event(I', Y)` over a fresh uniform `Y` of length `y_len`.
/// Returns `None` when no window fits.
pub fn detect_emerging_barrier<F>(
    interval: &Interval,
    delta: i64,
    window: i64,
    y_len: usize,
    w_sq: f64,
    trials: u64,
    seed: u64,
    event: F,
) -> Result<Option<EmergingEstimate>>
where
    F: Fn(&Interval, &BinarySequence) -> bool + Sync,
{
    if trials < MIN_TRIALS {
        return Err(Error::Underpowered { trials, minimum: MIN_TRIALS });
    }
    let blank = BinarySequence::zeros(y_len);
    let all = Interval::closed(1, y_len as i64);
    let mut best: Option<EmergingEstimate> = None;
    let mut barrier = false;
    for u in interval.left + 1..=interval.left + 2 * delta {
        let v = u + window;
        if v <= interval.right - 2 * delta || v > interval.right {
            continue;
        }
        let w = Interval::closed(u, v);
        let est = estimate_conditional(&blank, &all, trials, seed, |ys| event(&w, ys))?;
        barrier |= est.ci_high > w_sq;
        if best.is_none_or(|b| est.p_hat > b.estimate.p_hat) {
            best = Some(EmergingEstimate { window: w, estimate: est, is_barrier: false });
        }
    }
    Ok(best.map(|b| EmergingEstimate { is_barrier: barrier, ..b }))
}

/// Pre-wall conditions for a candidate emerging barrier `interval` against
/// the walls of the same sequence at the current level:
/// (a) it is an external hop, or a dominant light wall plus one or two
/// external hops of size `>= delta` around it; (b) each end borders an
/// external interval of size `>= delta` or a wall. Neighbourhoods that run
/// past the ends of the sequence (`]-1, ..]` or beyond `len`) count as
/// external.
pub fn is_emerging_prewall(interval: &Interval, walls: &[WallValue], delta: i64, r_star: f64, len: i64) -> bool {
    let ext = |l: i64, r: i64| l >= r || is_external(&Interval::right_closed(l.max(-1), r.min(len.max(l.max(-1)))), walls);
    let hop = is_external(interval, walls);
    let around_dominant = walls.iter().any(|d| {
        (d.rank as f64) < r_star
            && is_dominant(d, walls, delta)
            && interval.contains_body(&d.body)
            && d.body != *interval
            && [(interval.left, d.left()), (d.right(), interval.right)]
                .iter()
                .all(|&(l, r)| l == r || (r - l >= delta && ext(l, r)))
    });
    let left_ok = ext(interval.left - delta, interval.left) || walls.iter().any(|w| w.right() == interval.left);
    let right_ok = ext(interval.right, interval.right + delta) || walls.iter().any(|w| w.left() == interval.right);
    (hop || around_dominant) && left_ok && right_ok
}

/// Emerging pre-wall type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EmergingType {
    Correlated1 = 1,
    Correlated2 = 2,
    MissingHole = 3,
}

/// Processes type 1, then type 3, then type 2 pre-walls, each list sorted by
/// `(left, size)`, designating a pre-wall iff it is disjoint from all those
/// designated before.
pub fn designate_emerging_walls(
    prewalls: &[(EmergingType, Interval)],
    rank: i64,
    orientation: Orientation,
) -> Vec<WallValue> {
    let mut chosen: Vec<WallValue> = Vec::new();
    for ty in [EmergingType::Correlated1, EmergingType::MissingHole, EmergingType::Correlated2] {
        let mut list: Vec<Interval> = prewalls.iter().filter(|(t, _)| *t == ty).map(|(_, i)| *i).collect();
        list.sort_by_key(|i| (i.left, i.size()));
        for body in list {
            if chosen.iter().all(|c| c.body.disjoint(&body)) {
                chosen.push(WallValue { body, rank, orientation, kind: WallKind::Emerging });
            }
        }
    }
    chosen
}
