//! Level-by-level parameter evolution. Every size parameter is kept as its
//! exact base-`λ` logarithm (`λ = 2^{1/2}`), because `Δ = λ^{δR}` leaves the
//! `f64` range for modest `m`; floats appear only at report time.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::exponents::{to_f64, verify_exponents, ExponentTuple};
use crate::error::{Error, Result};
use crate::geometry::Rational;

/// `λ^x` for an exponent given as `f64`.
pub fn lambda_pow(x: f64) -> f64 {
    (x / 2.0).exp2()
}

/// `λ^x` in scientific notation, computed from `x` so that values outside
/// the `f64` range still print.
pub fn format_lambda_pow(x: f64) -> String {
    let log10 = x / 2.0 * std::f64::consts::LOG10_2;
    let mut exp = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exp);
    if format!("{mantissa:.6}").starts_with("10") {
        mantissa /= 10.0;
        exp += 1.0;
    }
    format!("{mantissa:.6}e{exp}")
}

/// Configuration constants the construction only fixes up to existence.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamConfig {
    /// Slope-increment constant `Λ`.
    pub lambda_cap: f64,
    pub c2: f64,
    pub c3: f64,
    /// Level-1 rank lower bound; `None` means `2m`.
    pub r1: Option<BigRational>,
}

impl Default for ParamConfig {
    fn default() -> Self {
        ParamConfig { lambda_cap: 10.0, c2: 0.25, c3: 4.0, r1: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MazeryParams {
    pub level: u32,
    pub m: u32,
    /// Rank lower bound `R`; also `log_λ T`.
    pub r: BigRational,
    pub log_delta: BigRational,
    pub log_gamma: BigRational,
    pub log_phi: BigRational,
    pub log_psi: BigRational,
    /// `log_λ w`; `None` when `w = 0` (level 1 has no traps).
    pub log_w: Option<BigRational>,
    pub q_tri: f64,
    pub q_inv: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub slb: Rational,
    pub lambda_cap: f64,
    pub c2: f64,
    pub c3: f64,
    pub r1: BigRational,
}

fn scaled(x: &BigRational, r: &BigRational) -> BigRational {
    x * r
}

impl MazeryParams {
    /// Level-1 parameters for `m`: `σx = slb = 1/2m`, `σy = m`, `R₁ = 2m`,
    /// `q△ = 0`, `q▽ = 1/2`, `w = 0`.
    pub fn base(e: &ExponentTuple, m: u32, config: &ParamConfig) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        if !(config.lambda_cap > 0.0 && config.c2 > 0.0 && config.c3 > 0.0) {
            return Err(Error::InvalidParameter("configuration constants must be positive".into()));
        }
        let r1 = config.r1.clone().unwrap_or_else(|| BigRational::from_integer((2 * m).into()));
        let slb = Rational::new(1, 2 * m as i64);
        let mut p = MazeryParams {
            level: 1,
            m,
            r: r1.clone(),
            log_delta: BigRational::one(),
            log_gamma: BigRational::one(),
            log_phi: BigRational::one(),
            log_psi: BigRational::one(),
            log_w: None,
            q_tri: 0.0,
            q_inv: 0.5,
            sigma_x: 1.0 / (2 * m) as f64,
            sigma_y: m as f64,
            slb,
            lambda_cap: config.lambda_cap,
            c2: config.c2,
            c3: config.c3,
            r1,
        };
        p.set_sizes(e);
        Ok(p)
    }

    fn set_sizes(&mut self, e: &ExponentTuple) {
        let half = BigRational::new(1.into(), 2.into());
        self.log_delta = scaled(&e.delta, &self.r);
        self.log_gamma = scaled(&e.gamma, &self.r);
        self.log_phi = scaled(&e.phi, &self.r);
        self.log_psi = (&self.log_gamma + &self.log_phi) * half;
        if self.level > 1 {
            self.log_w = Some(-scaled(&e.omega, &self.r));
        }
    }

    /// The next level: `R* = τR`, sizes recomputed from `R*`,
    /// `σ* = σ + Λ slb⁻³ Δ/Γ`, `q* = q + Δ* T⁻¹`.
    pub fn scale_up(&self, e: &ExponentTuple) -> Self {
        let slb = self.slb_f64();
        let increment = self.lambda_cap * slb.powi(-3) * lambda_pow(to_f64(&(&self.log_delta - &self.log_gamma)));
        let r_next = &self.r * &e.tau;
        let delta_next_over_t = lambda_pow(to_f64(&(scaled(&e.delta, &r_next) - &self.r)));
        let mut next = MazeryParams {
            level: self.level + 1,
            r: r_next,
            q_tri: self.q_tri + delta_next_over_t,
            q_inv: self.q_inv + delta_next_over_t,
            sigma_x: self.sigma_x + increment,
            sigma_y: self.sigma_y + increment,
            ..self.clone()
        };
        next.set_sizes(e);
        next
    }

    pub fn slb_f64(&self) -> f64 {
        self.slb.to_f64().expect("finite")
    }

    pub fn r_f64(&self) -> f64 {
        to_f64(&self.r)
    }

    pub fn t(&self) -> f64 {
        lambda_pow(self.r_f64())
    }

    pub fn delta(&self) -> f64 {
        lambda_pow(to_f64(&self.log_delta))
    }

    pub fn gamma(&self) -> f64 {
        lambda_pow(to_f64(&self.log_gamma))
    }

    pub fn phi(&self) -> f64 {
        lambda_pow(to_f64(&self.log_phi))
    }

    pub fn psi(&self) -> f64 {
        lambda_pow(to_f64(&self.log_psi))
    }

    pub fn w(&self) -> f64 {
        self.log_w.as_ref().map_or(0.0, |x| lambda_pow(to_f64(x)))
    }

    /// Heavy threshold `R* = τR`.
    pub fn r_star(&self, e: &ExponentTuple) -> BigRational {
        &self.r * &e.tau
    }

    /// `1/2R₁ ≤ σx/2 ≤ slb ≤ σx`, `2 ≤ σy`, `σxσy < 1 − slb`.
    pub fn slope_sanity(&self) -> bool {
        let slb = self.slb_f64();
        let lo = 1.0 / (2.0 * to_f64(&self.r1));
        le_ulp(lo, self.sigma_x / 2.0)
            && le_ulp(self.sigma_x / 2.0, slb)
            && le_ulp(slb, self.sigma_x)
            && 2.0 <= self.sigma_y
            && self.sigma_x * self.sigma_y < 1.0 - slb
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.level,
            self.r_f64(),
            format_lambda_pow(self.r_f64()),
            format_lambda_pow(to_f64(&self.log_delta)),
            format_lambda_pow(to_f64(&self.log_gamma)),
            format_lambda_pow(to_f64(&self.log_phi)),
            format_lambda_pow(to_f64(&self.log_psi)),
            self.log_w.as_ref().map_or("0".to_string(), |x| format_lambda_pow(to_f64(x))),
            self.q_tri,
            self.q_inv,
            self.sigma_x,
            self.sigma_y
        )
    }
}

pub const CSV_HEADER: &str = "level,R,T,Δ,Γ,Φ,Ψ,w,qtri,qinv,sigx,sigy";

/// `a <= b` up to one unit in the last place of `b`.
fn le_ulp(a: f64, b: f64) -> bool {
    a <= b || a - b <= b.abs() * f64::EPSILON
}

/// Parameters at level `k` (level 1 is `base` itself).
pub fn level_params(e: &ExponentTuple, base: &MazeryParams, k: u32) -> Result<MazeryParams> {
    require_feasible(e)?;
    if k == 0 {
        return Err(Error::InvalidParameter("levels start at 1".into()));
    }
    let mut p = base.clone();
    while p.level < k {
        p = p.scale_up(e);
    }
    Ok(p)
}

fn require_feasible(e: &ExponentTuple) -> Result<()> {
    let report = verify_exponents(e)?;
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.violated().iter().map(|c| c.name()).collect();
        Err(Error::Exponents(format!("violated: {}", names.join(", "))))
    }
}

/// Per-level bookkeeping of the conditions the induction needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCheck {
    pub level: u32,
    pub slope_sanity: bool,
    pub q_tri_ok: bool,
    pub q_inv_ok: bool,
    /// `Δ_k/Δ_{k+1} < slb²/2`.
    pub delta_ratio_ok: bool,
    /// `σ_{k+1} ≥ σ_k` in both coordinates.
    pub sigma_monotone: bool,
}

impl LevelCheck {
    pub fn all(&self) -> bool {
        self.slope_sanity && self.q_tri_ok && self.q_inv_ok && self.delta_ratio_ok && self.sigma_monotone
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelTable {
    pub levels: Vec<MazeryParams>,
    pub checks: Vec<LevelCheck>,
    /// Largest `K` such that every check of levels `1..=K` holds.
    pub horizon: u32,
}

impl LevelTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.levels {
            out.push_str(&p.csv_row());
            out.push('\n');
        }
        out
    }
}

pub fn level_table(e: &ExponentTuple, base: &MazeryParams, levels: u32) -> Result<LevelTable> {
    require_feasible(e)?;
    let mut ps = vec![base.clone()];
    while (ps.len() as u32) < levels + 1 {
        let next = ps.last().expect("non-empty").scale_up(e);
        ps.push(next);
    }
    let slb = base.slb_f64();
    let checks: Vec<LevelCheck> = ps
        .windows(2)
        .map(|w| {
            let (p, n) = (&w[0], &w[1]);
            let ratio_log = to_f64(&(&p.log_delta - &n.log_delta));
            LevelCheck {
                level: p.level,
                slope_sanity: p.slope_sanity(),
                q_tri_ok: p.q_tri < 0.05,
                q_inv_ok: p.q_inv < 0.55,
                // Compared in log₂ space: λ^x < slb²/2  ⇔  x/2 < 2 log₂ slb − 1.
                delta_ratio_ok: ratio_log / 2.0 < 2.0 * slb.log2() - 1.0,
                sigma_monotone: n.sigma_x >= p.sigma_x && n.sigma_y >= p.sigma_y,
            }
        })
        .collect();
    ps.truncate(levels as usize);
    let horizon = checks.iter().take_while(|c| c.all()).count() as u32;
    Ok(LevelTable { levels: ps, checks, horizon })
}
