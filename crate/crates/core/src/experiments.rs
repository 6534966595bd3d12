//! Monte Carlo estimates of finite-prefix embedding probabilities, plus
//! empirical checks of the level-1 wall and hole frequencies.
//!
//! Within a trial `Y` is drawn before `X`, so for a fixed plan the pair
//! `(X, Y)` of trial `t` does not depend on `m`, and estimates for
//! different `m` are coupled.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::engine::embeddable_prefix;
use crate::error::{Error, Result};
use crate::geometry::Rational;
use crate::mazery::{find_walls, hole_starting_at, Orientation, WallKind, WallValue};
use crate::sampling::{self, Estimate, RNG_ID};
use crate::sequence::BinarySequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialPlan {
    pub master_seed: u64,
    pub trials: u64,
    pub m: usize,
    pub l: usize,
    /// Length of `X`; `None` means `m·L`.
    pub x_length: Option<usize>,
}

impl TrialPlan {
    pub fn x_len(&self) -> usize {
        self.x_length.unwrap_or(self.m * self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub rng_id: &'static str,
    pub master_seed: u64,
}

pub const CSV_HEADER: &str = "m,L,trials,successes,p_hat,ci_low,ci_high,rng_id,master_seed";

impl EstimateRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.m, self.l, self.trials, self.successes, self.p_hat, self.ci_low, self.ci_high, self.rng_id, self.master_seed
        )
    }
}

/// `#`-prefixed lines identifying the producing build and seeding.
pub fn metadata_preamble(master_seed: u64) -> String {
    format!("# clairvoyant {}\n# rng_id={RNG_ID}\n# master_seed={master_seed}\n", crate::VERSION)
}

pub fn estimate_embed_prob(plan: &TrialPlan) -> Result<EstimateRow> {
    if plan.trials == 0 {
        return Err(Error::Underpowered { trials: 0, minimum: 1 });
    }
    if plan.m == 0 {
        return Err(Error::ZeroStep);
    }
    let x_len = plan.x_len();
    if x_len < plan.l {
        return Err(Error::InvalidParameter(format!("x_length {x_len} is shorter than L = {}", plan.l)));
    }
    let est = sampling::estimate(plan.master_seed, plan.trials, |rng| {
        let y = BinarySequence::random(plan.l, rng);
        let x = BinarySequence::random(x_len, rng);
        embeddable_prefix(&x, &y, plan.m, plan.l).expect("lengths checked").embeddable
    });
    Ok(row(plan, est))
}

fn row(plan: &TrialPlan, e: Estimate) -> EstimateRow {
    EstimateRow {
        m: plan.m,
        l: plan.l,
        trials: e.trials,
        successes: e.successes,
        p_hat: e.p_hat,
        ci_low: e.ci_low,
        ci_high: e.ci_high,
        rng_id: RNG_ID,
        master_seed: plan.master_seed,
    }
}

/// One row per `(m, L)`, `m` outer; every row uses the template's seed,
/// trial count and `x_length`.
pub fn sweep(m_range: RangeInclusive<usize>, l_range: RangeInclusive<usize>, template: &TrialPlan) -> Result<Vec<EstimateRow>> {
    if m_range.is_empty() || l_range.is_empty() {
        return Err(Error::InvalidParameter("empty sweep range".into()));
    }
    let mut rows = Vec::new();
    for m in m_range {
        for l in l_range.clone() {
            rows.push(estimate_embed_prob(&TrialPlan { m, l, ..*template })?);
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[EstimateRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Empirical rate of a size-`l` wall starting at position 1 of a random
/// sequence, compared against `2^{-l}` and against the count of constant
/// intervals `2^{-(l-1)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WallFrequencyReport {
    pub m: usize,
    pub l: usize,
    pub samples: u64,
    pub successes: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `2^{-l}`.
    pub stated_rate: f64,
    pub z_stated: f64,
    /// `2^{-(l-1)}`.
    pub counted_rate: f64,
    pub z_counted: f64,
    pub rng_id: &'static str,
    pub master_seed: u64,
}

pub fn wall_frequency_check(m: usize, l: usize, samples: u64, master_seed: u64) -> Result<WallFrequencyReport> {
    if m == 0 || l < m || l >= 2 * m {
        return Err(Error::InvalidParameter(format!("wall size {l} outside [m, 2m) for m = {m}")));
    }
    if samples == 0 {
        return Err(Error::Underpowered { trials: 0, minimum: 1 });
    }
    let est = sampling::estimate(master_seed, samples, |rng| {
        let x = BinarySequence::random(l + 2, rng);
        find_walls(&x, m, Orientation::Vertical).iter().any(|w| w.left() == 1 && w.size() == l as i64)
    });
    let stated = 0.5f64.powi(l as i32);
    let counted = 0.5f64.powi(l as i32 - 1);
    Ok(WallFrequencyReport {
        m,
        l,
        samples,
        successes: est.successes,
        rate: est.p_hat,
        ci_low: est.ci_low,
        ci_high: est.ci_high,
        stated_rate: stated,
        z_stated: est.z_score(stated),
        counted_rate: counted,
        z_counted: est.z_score(counted),
        rng_id: RNG_ID,
        master_seed,
    })
}

/// Empirical rate at which a fitting hole through a fixed constant vertical
/// wall of size `m` starts at a fixed position of a random `Y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoleFrequencyReport {
    pub m: usize,
    pub position: i64,
    pub samples: u64,
    pub successes: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub expected_rate: f64,
    pub z: f64,
    pub rng_id: &'static str,
    pub master_seed: u64,
}

pub fn hole_frequency_check(m: usize, samples: u64, master_seed: u64) -> Result<HoleFrequencyReport> {
    if m == 0 {
        return Err(Error::ZeroStep);
    }
    if samples == 0 {
        return Err(Error::Underpowered { trials: 0, minimum: 1 });
    }
    let x = BinarySequence::from_bits(std::iter::repeat_n(true, m));
    let wall = WallValue::new(0, m as i64, 2 * m as i64, Orientation::Vertical, WallKind::BaseRun);
    let slb = Rational::new(1, 2 * m as i64);
    let y_len = 4 * m;
    let position = 2 * m as i64;
    let est = sampling::estimate(master_seed, samples, |rng| {
        let y = BinarySequence::random(y_len, rng);
        hole_starting_at(&wall, position, y_len as i64, &x, &y, slb, 3 * m).is_some()
    });
    Ok(HoleFrequencyReport {
        m,
        position,
        samples,
        successes: est.successes,
        rate: est.p_hat,
        ci_low: est.ci_low,
        ci_high: est.ci_high,
        expected_rate: 0.5,
        z: est.z_score(0.5),
        rng_id: RNG_ID,
        master_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(m: usize, l: usize, trials: u64) -> TrialPlan {
        TrialPlan { master_seed: 5, trials, m, l, x_length: None }
    }

    #[test]
    fn zero_trials_is_underpowered() {
        assert!(matches!(estimate_embed_prob(&plan(2, 4, 0)), Err(Error::Underpowered { .. })));
    }

    #[test]
    fn empty_prefix_always_embeds() {
        let r = estimate_embed_prob(&plan(3, 0, 500)).unwrap();
        assert_eq!((r.successes, r.p_hat), (500, 1.0));
    }

    #[test]
    fn forced_diagonal_rate() {
        let r = estimate_embed_prob(&plan(1, 3, 20_000)).unwrap();
        let sd = (0.125f64 * 0.875 / 20_000.0).sqrt();
        assert!((r.p_hat - 0.125).abs() < 4.0 * sd, "{r:?}");
        assert!(r.ci_low <= r.p_hat && r.p_hat <= r.ci_high);
    }

    #[test]
    fn coupled_estimates_increase_with_m() {
        let rows = sweep(1..=4, 16..=16, &plan(0, 0, 2000)).unwrap();
        assert!(rows.windows(2).all(|w| w[0].successes <= w[1].successes));
    }

    #[test]
    fn sweep_is_reproducible() {
        let a = rows_to_csv(&sweep(1..=2, 3..=5, &plan(0, 0, 300)).unwrap());
        let b = rows_to_csv(&sweep(1..=2, 3..=5, &plan(0, 0, 300)).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), 7);
    }

    #[test]
    fn wall_rate_counts_constant_intervals() {
        let r = wall_frequency_check(4, 4, 100_000, 1).unwrap();
        assert!(r.z_counted.abs() < 5.0, "{r:?}");
        assert!(r.z_stated > 5.0);
    }

    #[test]
    fn hole_rate_is_one_half() {
        let r = hole_frequency_check(4, 10_000, 1).unwrap();
        assert!(r.z.abs() < 4.0, "{r:?}");
    }

    #[test]
    fn bad_wall_size_rejected() {
        assert!(wall_frequency_check(4, 8, 10, 1).is_err());
        assert!(wall_frequency_check(4, 3, 10, 1).is_err());
    }
}
