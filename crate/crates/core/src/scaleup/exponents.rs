//! Exponent tuple of the renormalization and its feasibility constraints,
//! checked in exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Parses `"0.015"`, `"7/4"` or `"3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(n, d);
    Ok(if neg { -r } else { r })
}

pub fn rat(text: &str) -> BigRational {
    parse_rational(text).expect("valid rational literal")
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `(δ, γ, φ, τ, τ', ω, χ)`. The base `λ = 2^{1/2}` and the rank-probability
/// power `c₁ = 2` are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTuple {
    pub delta: BigRational,
    pub gamma: BigRational,
    pub phi: BigRational,
    pub tau: BigRational,
    pub tau_prime: BigRational,
    pub omega: BigRational,
    pub chi: BigRational,
}

pub const C1: i32 = 2;

impl ExponentTuple {
    pub const FIELDS: [&'static str; 7] = ["delta", "gamma", "phi", "tau", "tau_prime", "omega", "chi"];

    /// `(0.15, 0.18, 0.24, 1.75, 2.5, 4.5, 0.015)`, a tuple satisfying every
    /// constraint.
    pub fn standard() -> Self {
        ExponentTuple {
            delta: rat("0.15"),
            gamma: rat("0.18"),
            phi: rat("0.24"),
            tau: rat("1.75"),
            tau_prime: rat("2.5"),
            omega: rat("4.5"),
            chi: rat("0.015"),
        }
    }

    pub fn field_mut(&mut self, name: &str) -> Option<&mut BigRational> {
        Some(match name {
            "delta" => &mut self.delta,
            "gamma" => &mut self.gamma,
            "phi" => &mut self.phi,
            "tau" => &mut self.tau,
            "tau_prime" => &mut self.tau_prime,
            "omega" => &mut self.omega,
            "chi" => &mut self.chi,
            _ => return None,
        })
    }

    /// Starts from [`ExponentTuple::standard`] and overrides the named fields.
    pub fn with_overrides<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut e = Self::standard();
        for (k, v) in pairs {
            let slot = e
                .field_mut(k.trim())
                .ok_or_else(|| Error::InvalidParameter(format!("unknown exponent {k:?}")))?;
            *slot = parse_rational(v)?;
        }
        Ok(e)
    }

    /// `τ̄ = 2τ/(τ−1)`; undefined at `τ = 1`.
    pub fn tau_bar(&self) -> Option<BigRational> {
        let d = &self.tau - BigRational::one();
        (!d.is_zero()).then(|| BigRational::from_integer(2.into()) * &self.tau / d)
    }

    fn check_positive(&self) -> Result<()> {
        let values = [&self.delta, &self.gamma, &self.phi, &self.tau, &self.tau_prime, &self.omega, &self.chi];
        for (name, v) in Self::FIELDS.iter().zip(values) {
            if !v.is_positive() {
                return Err(Error::Exponents(format!("{name} = {v} is not positive")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(delta={}, gamma={}, phi={}, tau={}, tau_prime={}, omega={}, chi={})",
            self.delta, self.gamma, self.phi, self.tau, self.tau_prime, self.omega, self.chi
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Constraint {
    #[serde(rename = "txp")]
    Txp,
    #[serde(rename = "txp'")]
    TxpPrime,
    #[serde(rename = "bubxp-etc")]
    BubxpEtc,
    #[serde(rename = "txp-ub")]
    TxpUb,
    #[serde(rename = "fxp-ub")]
    FxpUb,
    #[serde(rename = "bub-g-f-mod")]
    BubGFMod,
    #[serde(rename = "trap-xp")]
    TrapXp,
    #[serde(rename = "correl-trap-xp")]
    CorrelTrapXp,
    #[serde(rename = "emerg-xp.2")]
    EmergXp2,
    #[serde(rename = "emerg-xp.3")]
    EmergXp3,
    #[serde(rename = "hxp-ub.1")]
    HxpUb1,
    #[serde(rename = "hxp-ub.2")]
    HxpUb2,
    #[serde(rename = "hxp-ub.3")]
    HxpUb3,
}

impl Constraint {
    pub const ALL: [Constraint; 13] = [
        Constraint::Txp,
        Constraint::TxpPrime,
        Constraint::BubxpEtc,
        Constraint::TxpUb,
        Constraint::FxpUb,
        Constraint::BubGFMod,
        Constraint::TrapXp,
        Constraint::CorrelTrapXp,
        Constraint::EmergXp2,
        Constraint::EmergXp3,
        Constraint::HxpUb1,
        Constraint::HxpUb2,
        Constraint::HxpUb3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::Txp => "txp",
            Constraint::TxpPrime => "txp'",
            Constraint::BubxpEtc => "bubxp-etc",
            Constraint::TxpUb => "txp-ub",
            Constraint::FxpUb => "fxp-ub",
            Constraint::BubGFMod => "bub-g-f-mod",
            Constraint::TrapXp => "trap-xp",
            Constraint::CorrelTrapXp => "correl-trap-xp",
            Constraint::EmergXp2 => "emerg-xp.2",
            Constraint::EmergXp3 => "emerg-xp.3",
            Constraint::HxpUb1 => "hxp-ub.1",
            Constraint::HxpUb2 => "hxp-ub.2",
            Constraint::HxpUb3 => "hxp-ub.3",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            Constraint::Txp => "1 < tau < 2",
            Constraint::TxpPrime => "tau < tau' < tau^2",
            Constraint::BubxpEtc => "0 < delta < gamma < phi < 1",
            Constraint::TxpUb => "tau <= 2 - phi",
            Constraint::FxpUb => "phi < tau*delta",
            Constraint::BubGFMod => "2(gamma - delta) = phi - gamma",
            Constraint::TrapXp => "2gamma - tau*delta + 1 < omega",
            Constraint::CorrelTrapXp => "4(gamma + delta) < omega(4 - tau)",
            Constraint::EmergXp2 => "4gamma + 6delta + tau' < 2omega",
            Constraint::EmergXp3 => "tau(delta + 1) < tau'",
            Constraint::HxpUb1 => "tau*chi < gamma - delta",
            Constraint::HxpUb2 => "taubar*chi < 1 - tau*delta",
            Constraint::HxpUb3 => "taubar*chi < omega - 2tau*delta",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A side of a constraint: one quantity, or the ordered chain for interval
/// constraints. `None` stands for `+inf`.
pub type Side = Vec<Option<BigRational>>;

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub lhs: Side,
    pub rhs: Side,
    pub ok: bool,
}

fn side_json(side: &Side) -> Value {
    let one = |v: &Option<BigRational>| v.as_ref().map_or(json!("inf"), |r| json!(to_f64(r)));
    match side.as_slice() {
        [v] => one(v),
        vs => Value::Array(vs.iter().map(one).collect()),
    }
}

impl ConstraintCheck {
    /// `{"constraint", "lhs", "rhs", "ok"}` plus the relation text.
    pub fn to_json(&self) -> Value {
        json!({
            "constraint": self.constraint.name(),
            "relation": self.constraint.relation(),
            "lhs": side_json(&self.lhs),
            "rhs": side_json(&self.rhs),
            "ok": self.ok,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentReport {
    pub checks: Vec<ConstraintCheck>,
}

impl ExponentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn violated(&self) -> Vec<Constraint> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.constraint).collect()
    }
}

/// Evaluates all thirteen constraints. Failing constraints are part of the
/// report; only non-positive fields are an error.
pub fn verify_exponents(e: &ExponentTuple) -> Result<ExponentReport> {
    e.check_positive()?;
    let int = |n: i64| BigRational::from_integer(n.into());
    let (d, g, f, t, tp, w, c) = (&e.delta, &e.gamma, &e.phi, &e.tau, &e.tau_prime, &e.omega, &e.chi);
    let tau_sq = t * t;
    let td = t * d;
    let tbar_chi = e.tau_bar().map(|tb| tb * c);
    let lt = |a: &Option<BigRational>, b: &BigRational| a.as_ref().is_some_and(|a| a < b);

    let mut checks = Vec::with_capacity(13);
    let mut push = |constraint, lhs: Vec<Option<BigRational>>, rhs: Vec<Option<BigRational>>, ok| {
        checks.push(ConstraintCheck { constraint, lhs, rhs, ok })
    };
    push(Constraint::Txp, vec![Some(t.clone())], vec![Some(int(1)), Some(int(2))], int(1) < *t && *t < int(2));
    push(
        Constraint::TxpPrime,
        vec![Some(tp.clone())],
        vec![Some(t.clone()), Some(tau_sq.clone())],
        t < tp && *tp < tau_sq,
    );
    push(
        Constraint::BubxpEtc,
        vec![Some(d.clone()), Some(g.clone()), Some(f.clone())],
        vec![Some(int(0)), Some(int(1))],
        d.is_positive() && d < g && g < f && *f < int(1),
    );
    push(Constraint::TxpUb, vec![Some(t.clone())], vec![Some(int(2) - f)], *t <= int(2) - f);
    push(Constraint::FxpUb, vec![Some(f.clone())], vec![Some(td.clone())], *f < td);
    let (l, r) = (int(2) * (g - d), f - g);
    push(Constraint::BubGFMod, vec![Some(l.clone())], vec![Some(r.clone())], l == r);
    let l = int(2) * g - &td + int(1);
    push(Constraint::TrapXp, vec![Some(l.clone())], vec![Some(w.clone())], l < *w);
    let (l, r) = (int(4) * (g + d), w * (int(4) - t));
    push(Constraint::CorrelTrapXp, vec![Some(l.clone())], vec![Some(r.clone())], l < r);
    let (l, r) = (int(4) * g + int(6) * d + tp, int(2) * w);
    push(Constraint::EmergXp2, vec![Some(l.clone())], vec![Some(r.clone())], l < r);
    let l = t * (d + int(1));
    push(Constraint::EmergXp3, vec![Some(l.clone())], vec![Some(tp.clone())], l < *tp);
    let (l, r) = (t * c, g - d);
    push(Constraint::HxpUb1, vec![Some(l.clone())], vec![Some(r.clone())], l < r);
    let r = int(1) - &td;
    push(Constraint::HxpUb2, vec![tbar_chi.clone()], vec![Some(r.clone())], lt(&tbar_chi, &r));
    let r = w - int(2) * &td;
    push(Constraint::HxpUb3, vec![tbar_chi.clone()], vec![Some(r.clone())], lt(&tbar_chi, &r));
    Ok(ExponentReport { checks })
}

/// One perturbation of [`ExponentTuple::standard`] per constraint, aimed at
/// violating that constraint. Only eight constraints can be violated while
/// all others hold; for the remaining five (`txp`, `bubxp-etc`,
/// `correl-trap-xp`, `hxp-ub.2`, `hxp-ub.3`) the others imply them, and the
/// listed tuple is the smallest natural perturbation.
pub fn mutation_list() -> Vec<(Constraint, ExponentTuple)> {
    let m = |pairs: &[(&str, &str)]| ExponentTuple::with_overrides(pairs.iter().copied()).expect("valid mutation");
    vec![
        (Constraint::Txp, m(&[("tau", "2.0")])),
        (Constraint::TxpPrime, m(&[("tau_prime", "3.1")])),
        (Constraint::BubxpEtc, m(&[("delta", "0.19")])),
        (Constraint::TxpUb, m(&[("tau", "1.8")])),
        (Constraint::FxpUb, m(&[("tau", "1.6")])),
        (Constraint::BubGFMod, m(&[("gamma", "0.19")])),
        (
            Constraint::TrapXp,
            m(&[
                ("delta", "0.05"),
                ("gamma", "0.052"),
                ("phi", "0.056"),
                ("tau", "1.2"),
                ("tau_prime", "1.35"),
                ("omega", "1.0"),
                ("chi", "0.001"),
            ]),
        ),
        (Constraint::CorrelTrapXp, m(&[("omega", "0.5")])),
        (Constraint::EmergXp2, m(&[("omega", "2.0")])),
        (Constraint::EmergXp3, m(&[("tau_prime", "2.0")])),
        (Constraint::HxpUb1, m(&[("chi", "0.02")])),
        (Constraint::HxpUb2, m(&[("chi", "0.2")])),
        (Constraint::HxpUb3, m(&[("omega", "0.55")])),
    ]
}
