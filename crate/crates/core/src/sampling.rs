//! Seeding contract and binomial interval estimates shared by every Monte
//! Carlo routine.
//!
//! Trial `t` of a run with master seed `s` draws from ChaCha8 seeded with
//! `seed_from_u64(s)` on stream `t`. Outcomes therefore depend only on
//! `(s, t)`, never on scheduling, and counters are summed commutatively.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Identifier written next to every seeded output.
pub const RNG_ID: &str = "chacha8-stream-v1";

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Wilson score interval at normal quantile `z`.
pub fn wilson(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp so the point estimate is always inside despite rounding.
    ((centre - half).max(0.0).min(p), (centre + half).min(1.0).max(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let (ci_low, ci_high) = wilson(successes, trials, Z95);
        let p_hat = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Estimate { trials, successes, p_hat, ci_low, ci_high }
    }

    /// Binomial standard error under hypothesised rate `p0`.
    pub fn z_score(&self, p0: f64) -> f64 {
        let sd = (p0 * (1.0 - p0) / self.trials as f64).sqrt();
        (self.p_hat - p0) / sd
    }
}

/// Runs `trials` independent Bernoulli trials in parallel.
pub fn estimate<F>(master_seed: u64, trials: u64, event: F) -> Estimate
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&t| event(&mut trial_rng(master_seed, t)))
        .count() as u64;
    Estimate::from_counts(successes, trials)
}
