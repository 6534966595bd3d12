//! Closed-form rank arithmetic.

use super::params::lambda_pow;

/// Wall-probability bound `p(r) = c₂ r^{-2} λ^{-r}`.
pub fn rank_prob(r: f64, c2: f64) -> f64 {
    c2 * r.powi(-super::exponents::C1) * lambda_pow(-r)
}

/// Hole-probability lower bound `h(r) = c₃ λ^{-χr}`.
pub fn hole_prob(r: f64, chi: f64, c3: f64) -> f64 {
    c3 * lambda_pow(-chi * r)
}

/// Upper bound `τ̄R` on every rank present at a level with lower bound `R`.
pub fn rank_bound(tau: f64, r: f64) -> f64 {
    2.0 * tau / (tau - 1.0) * r
}

/// Rank `τ'R` of emerging walls.
pub fn emerging_rank(tau_prime: f64, r: f64) -> f64 {
    tau_prime * r
}
