use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::codec::CheckRule;
use crate::families::{BuildSpec, Family};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// A frame is in error when any information bit is wrong.
    #[default]
    Info,
    /// A frame is in error when any codeword bit is wrong.
    Word,
}

impl FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "info" => Ok(Metric::Info),
            "word" => Ok(Metric::Word),
            _ => Err(format!("metric must be info or word, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub family: Family,
    pub n: usize,
    pub f: usize,
    pub rate: Option<(usize, usize)>,
    /// Code construction seed.
    pub seed: u64,
    pub ebn0_db: Vec<f64>,
    pub max_iter: usize,
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub metric: Metric,
    /// Seed of the per-frame random streams.
    pub master_seed: u64,
    /// Worker threads; 0 uses all cores. Does not affect results.
    #[serde(skip)]
    pub workers: usize,
    pub min_sum: bool,
    /// Drop channel noise (the N0 → 0 limit).
    pub noiseless: bool,
    /// Monte Carlo samples for an outage column; 0 disables it.
    pub outage_samples: u64,
    /// Stop the grid after the first point with FER below this; 0 runs
    /// every point.
    #[serde(default)]
    pub fer_floor: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            family: Family::RandomRoot,
            n: 1024,
            f: 2,
            rate: None,
            seed: 1,
            ebn0_db: vec![0.0],
            max_iter: 5,
            min_frame_errors: 100,
            max_frames: 10_000_000,
            metric: Metric::Info,
            master_seed: 1,
            workers: 0,
            min_sum: false,
            noiseless: false,
            outage_samples: 0,
            fer_floor: 0.0,
        }
    }
}

/// Keys accepted by [`SimConfig::from_key_values`]; they mirror the CLI
/// flags with `-` written as `_`.
pub const CONFIG_KEYS: [&str; 16] = [
    "family",
    "n",
    "f",
    "rate",
    "seed",
    "ebn0",
    "max_iter",
    "min_frame_errors",
    "max_frames",
    "metric",
    "master_seed",
    "workers",
    "min_sum",
    "noiseless",
    "outage_samples",
    "fer_floor",
];

impl SimConfig {
    pub fn build_spec(&self) -> BuildSpec {
        BuildSpec { family: self.family, n: self.n, f: self.f, rate: self.rate, seed: self.seed }
    }

    pub fn check_rule(&self) -> CheckRule {
        if self.min_sum {
            CheckRule::MinSum
        } else {
            CheckRule::SumProduct
        }
    }

    /// Defaults overridden by `kv`. Unknown keys are rejected.
    pub fn from_key_values(kv: &BTreeMap<String, String>) -> Result<Self, SimError> {
        let mut c = SimConfig::default();
        for (k, v) in kv {
            let bad = |e: &dyn std::fmt::Display| SimError::Config(format!("{k} = {v:?}: {e}"));
            match k.as_str() {
                "family" => c.family = v.parse().map_err(|e: String| bad(&e))?,
                "n" => c.n = v.parse().map_err(|e| bad(&e))?,
                "f" => c.f = v.parse().map_err(|e| bad(&e))?,
                "rate" => c.rate = Some(parse_rate(v).map_err(|e| bad(&e))?),
                "seed" => c.seed = v.parse().map_err(|e| bad(&e))?,
                "ebn0" => c.ebn0_db = parse_grid(v).map_err(|e| bad(&e))?,
                "max_iter" => c.max_iter = v.parse().map_err(|e| bad(&e))?,
                "min_frame_errors" => c.min_frame_errors = v.parse().map_err(|e| bad(&e))?,
                "max_frames" => c.max_frames = parse_count(v).map_err(|e| bad(&e))?,
                "metric" => c.metric = v.parse().map_err(|e: String| bad(&e))?,
                "master_seed" => c.master_seed = v.parse().map_err(|e| bad(&e))?,
                "workers" => c.workers = v.parse().map_err(|e| bad(&e))?,
                "min_sum" => c.min_sum = v.parse().map_err(|e| bad(&e))?,
                "noiseless" => c.noiseless = v.parse().map_err(|e| bad(&e))?,
                "outage_samples" => c.outage_samples = parse_count(v).map_err(|e| bad(&e))?,
                "fer_floor" => c.fer_floor = v.parse().map_err(|e| bad(&e))?,
                _ => return Err(SimError::Config(format!("unknown key {k:?}"))),
            }
        }
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<(), SimError> {
        if self.min_frame_errors < 1 {
            return Err(SimError::Config("min_frame_errors must be at least 1".into()));
        }
        if self.max_iter < 1 {
            return Err(SimError::Config("max_iter must be at least 1".into()));
        }
        if self.ebn0_db.is_empty() || self.ebn0_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SimError::Config("Eb/N0 grid must be non-empty and strictly increasing".into()));
        }
        Ok(())
    }
}

/// `a/b`.
pub fn parse_rate(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('/').ok_or_else(|| format!("rate must look like 1/2, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad rate {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad rate {s:?}"))?;
    if a == 0 || a >= b {
        return Err(format!("rate must be in (0, 1), got {s:?}"));
    }
    Ok((a, b))
}

/// Integer, optionally in `1e7` form.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let x: f64 = s.parse().map_err(|_| format!("bad count {s:?}"))?;
    if x < 0.0 || x.fract() != 0.0 || x > u64::MAX as f64 {
        return Err(format!("bad count {s:?}"));
    }
    Ok(x as u64)
}

/// `start:step:stop` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (parse(start)?, parse(step)?, parse(stop)?);
            if step <= 0.0 || stop < start {
                return Err(format!("grid {s:?} is empty"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9).collect())
        }
        [_] => s.split(',').map(parse).collect(),
        _ => Err(format!("grid must be start:step:stop, got {s:?}")),
    }
}

/// Flat `key = value` lines; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, SimError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| SimError::Config(format!("line {}: expected key = value", i + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}
