use std::fs;
use std::io::{self, Write};

use clairvoyant_core::experiments::{
    estimate_embed_prob, hole_frequency_check, metadata_preamble, rows_to_csv, sweep, wall_frequency_check, TrialPlan,
};
use clairvoyant_core::mazery::{
    find_fitting_hole, find_walls, span_clusters, spanning_sequence, Hole, Orientation, WallValue,
};
use clairvoyant_core::oracle::brute_force_reachable;
use clairvoyant_core::sampling::RNG_ID;
use clairvoyant_core::scaleup::exponents::parse_rational;
use clairvoyant_core::scaleup::params::lambda_pow;
use clairvoyant_core::scaleup::{
    compound_walls, level_table, verify_exponents, ExponentTuple, MazeryParams, ParamConfig,
};
use clairvoyant_core::{check_embedding, extract_embedding, reach_rows, BinarySequence, Interval, Rational, VERSION};
use serde_json::{json, Value};

use super::{AnalyzeArgs, Check, EmbedArgs, Format, ParamsArgs, SimulateArgs};

type Outcome = Result<u8, String>;

fn load(flag: &str, path: &str) -> Result<BinarySequence, String> {
    let data = fs::read(path).map_err(|e| format!("--{flag} {path}: {e}"))?;
    BinarySequence::parse_bytes(&data).map_err(|e| format!("--{flag} {path}: {e}"))
}

fn meta_json(seed: Option<u64>) -> Value {
    json!({"meta": {"tool": "clairvoyant", "version": VERSION, "seed": seed, "rng_id": RNG_ID}})
}

fn meta_text(seed: Option<u64>) -> String {
    let seed = seed.map_or("none".to_string(), |s| s.to_string());
    format!("# clairvoyant {VERSION}\n# rng_id={RNG_ID}\n# master_seed={seed}\n")
}

fn emit(text: &str) -> Result<(), String> {
    io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string())
}

pub fn embed(a: EmbedArgs) -> Outcome {
    let x = load("x", &a.x)?;
    let y = load("y", &a.y)?;
    let l = a.l.unwrap_or(y.len());
    let path = extract_embedding(&x, &y, a.m, l).map_err(|e| e.to_string())?;
    if let Some(p) = &path {
        debug_assert!(check_embedding(&x, &y, p));
    }
    let embeddable = path.is_some();
    let mut out = String::new();
    match a.format {
        Format::Json => {
            let mut v = json!({"embeddable": embeddable, "m": a.m, "L": l});
            if a.witness {
                v["witness"] = path.as_ref().map_or(Value::Null, |p| serde_json::to_value(p).expect("serializable"));
            }
            out.push_str(&format!("{}\n{v}\n", meta_json(None)));
        }
        Format::Text => {
            out.push_str(&meta_text(None));
            out.push_str(if embeddable { "embeddable\n" } else { "not embeddable\n" });
            if let (true, Some(p)) = (a.witness, &path) {
                out.push_str(&format!("steps {}\n", serde_json::to_string(&p.steps).expect("serializable")));
            }
        }
    }
    emit(&out)?;
    Ok(if embeddable { 0 } else { 1 })
}

fn hole_json(h: &Hole) -> Value {
    json!({"hole": {
        "interval": [h.interval.left, h.interval.right],
        "entry": [h.entry.x, h.entry.y],
        "exit": [h.exit.x, h.exit.y],
        "wall": h.wall,
    }})
}

/// Level-1 scale parameter `λ^{δ·2m}` for the standard exponents.
fn default_delta(m: usize) -> i64 {
    let e = ExponentTuple::standard();
    let log = clairvoyant_core::scaleup::exponents::to_f64(&e.delta) * (2 * m) as f64;
    lambda_pow(log).ceil() as i64
}

pub fn analyze(a: AnalyzeArgs) -> Outcome {
    if a.holes && a.y.is_none() {
        return Err("--holes requires --y".into());
    }
    if a.m == 0 {
        return Err("--m must be positive".into());
    }
    let x = load("x", &a.x)?;
    let y = a.y.as_deref().map(|p| load("y", p)).transpose()?;
    let delta = a.delta.unwrap_or_else(|| default_delta(a.m));
    let mut lines = vec![meta_json(None)];
    let mut sides: Vec<(&BinarySequence, Vec<WallValue>)> = vec![(&x, find_walls(&x, a.m, Orientation::Vertical))];
    if let Some(y) = &y {
        sides.push((y, find_walls(y, a.m, Orientation::Horizontal)));
    }
    for (_, walls) in &sides {
        lines.extend(walls.iter().map(|w| serde_json::to_value(w).expect("serializable")));
    }
    if let (true, Some(y)) = (a.holes, &y) {
        let slb = Rational::new(1, 2 * a.m as i64);
        for (seq, walls) in &sides {
            let other_len = if std::ptr::eq(*seq, &x) { y.len() } else { x.len() } as i64;
            let range = Interval::right_closed(0, other_len);
            for w in walls {
                if let Some(h) = find_fitting_hole(w, &range, &x, y, slb, 3 * a.m) {
                    lines.push(hole_json(&h));
                }
            }
        }
    }
    if a.span {
        for (seq, walls) in &sides {
            let orientation = walls.first().map(|w| w.orientation);
            for cluster in span_clusters(walls, seq.len() as i64, delta) {
                let mut v = json!({"span": {"orientation": orientation, "interval": [cluster.left, cluster.right]}});
                match spanning_sequence(&cluster, walls, seq, a.m, delta) {
                    Ok(ws) => v["span"]["walls"] = serde_json::to_value(ws).expect("serializable"),
                    Err(e) => v["span"]["error"] = json!(e.to_string()),
                }
                lines.push(v);
            }
        }
    }
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    emit(&text)?;
    Ok(0)
}

fn read_exponents(path: &str) -> Result<ExponentTuple, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("--exponents {path}: {e}"))?;
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(format!("--exponents {path}: line {}: expected key=value", n + 1))?;
        let key = match k.trim() {
            "tau'" => "tau_prime",
            k => k,
        };
        pairs.push((key.to_string(), v.trim().to_string()));
    }
    ExponentTuple::with_overrides(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .map_err(|e| format!("--exponents {path}: {e}"))
}

pub fn params(a: ParamsArgs) -> Outcome {
    let e = match &a.exponents {
        Some(p) => read_exponents(p)?,
        None => ExponentTuple::standard(),
    };
    let report = verify_exponents(&e).map_err(|e| e.to_string())?;
    let r1 = a.r1.as_deref().map(parse_rational).transpose().map_err(|e| e.to_string())?;
    let config = ParamConfig { lambda_cap: a.lambda_cap, c2: a.c2, c3: a.c3, r1 };
    let base = MazeryParams::base(&e, a.m, &config).map_err(|e| e.to_string())?;
    let mut out = meta_text(None);
    out.push_str(&format!(
        "# exponents={e}\n# lambda_cap={} c2={} c3={} R1={}\n",
        config.lambda_cap, config.c2, config.c3, base.r1
    ));
    if report.passed() {
        if a.levels == 0 {
            return Err("--levels must be at least 1".into());
        }
        let table = level_table(&e, &base, a.levels).map_err(|e| e.to_string())?;
        out.push_str(&table.to_csv());
        for c in &table.checks {
            out.push_str(&format!("{}\n", json!({"level_check": c})));
        }
        out.push_str(&format!("{}\n", json!({"horizon": table.horizon, "levels": a.levels})));
    }
    for c in &report.checks {
        out.push_str(&format!("{}\n", c.to_json()));
    }
    emit(&out)?;
    Ok(if report.passed() { 0 } else { 1 })
}

pub fn simulate(a: SimulateArgs) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads.unwrap_or(0))
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| simulate_in_pool(&a))
}

fn simulate_in_pool(a: &SimulateArgs) -> Outcome {
    let (m_lo, m_hi) = a.m_range;
    match a.check {
        None => {
            let (l_lo, l_hi) = a.l_range.ok_or("--L-range is required unless --check is given")?;
            let template = TrialPlan { master_seed: a.seed, trials: a.trials, m: m_lo, l: l_lo, x_length: a.x_length };
            let rows = sweep(m_lo..=m_hi, l_lo..=l_hi, &template).map_err(|e| e.to_string())?;
            emit(&format!("{}{}", metadata_preamble(a.seed), rows_to_csv(&rows)))?;
        }
        Some(check) => {
            let mut out = format!("{}\n", meta_json(Some(a.seed)));
            for m in m_lo..=m_hi {
                let v = match check {
                    Check::Walls => serde_json::to_value(
                        wall_frequency_check(m, a.wall_size.unwrap_or(m), a.trials, a.seed).map_err(|e| e.to_string())?,
                    ),
                    Check::Holes => {
                        serde_json::to_value(hole_frequency_check(m, a.trials, a.seed).map_err(|e| e.to_string())?)
                    }
                }
                .expect("serializable");
                out.push_str(&format!("{v}\n"));
            }
            emit(&out)?;
        }
    }
    Ok(0)
}

pub fn selftest() -> Outcome {
    let mut failures = 0;
    let mut report = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        failures += !ok as u32;
    };

    let mut oracle_ok = true;
    for bits in 0u32..1 << 9 {
        let x = BinarySequence::from_bits((0..6).map(|i| bits >> i & 1 == 1));
        let y = BinarySequence::from_bits((6..9).map(|i| bits >> i & 1 == 1));
        let dp = reach_rows(&x, &y, 2, 3).expect("in range");
        let brute = brute_force_reachable(&x, &y, 2, 3).expect("in guard");
        oracle_ok &= dp.len() == brute.len()
            && dp.iter().zip(&brute).all(|(f, b)| f.to_vec() == b.iter().copied().collect::<Vec<_>>());
    }
    report("frontier DP equals exhaustive search (|X|=6, |Y|=3, m=2)", oracle_ok);

    let e = ExponentTuple::standard();
    report("standard exponents satisfy all constraints", verify_exponents(&e).is_ok_and(|r| r.passed()));

    let w = |l, r, rank| WallValue::new(l, r, rank, Orientation::Vertical, clairvoyant_core::mazery::WallKind::BaseRun);
    let c = compound_walls(&[w(0, 5, 10), w(9, 12, 12)], 8.0, 11.0);
    report("compound rank at gap 4 is r1 + r2 - 4", c.len() == 1 && c[0].rank == 18);

    let plan = TrialPlan { master_seed: 1, trials: 200, m: 2, l: 6, x_length: None };
    report("estimates are reproducible", estimate_embed_prob(&plan).ok() == estimate_embed_prob(&plan).ok());

    Ok(if failures == 0 { 0 } else { 1 })
}
