use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{FerPoint, SimConfig, SimError};
use crate::families::{write_descriptor, CodeDesign};

pub const CSV_HEADER: [&str; 7] = ["ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber", "avg_iters"];

/// Structured result written as `run.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// SHA-256 of the JSON form of `config`.
    pub config_hash: String,
    pub config: SimConfig,
    /// `key = value` descriptor of the simulated code.
    pub descriptor: String,
    pub rate: f64,
    pub points: Vec<FerPoint>,
    pub outage: Option<Vec<f64>>,
    pub software_version: String,
    pub started_unix: u64,
    pub finished_unix: u64,
}

impl RunRecord {
    pub(crate) fn now() -> u64 {
        SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
    }

    pub fn new(
        cfg: &SimConfig,
        design: &CodeDesign,
        points: Vec<FerPoint>,
        outage: Option<Vec<f64>>,
        started_unix: u64,
    ) -> Self {
        RunRecord {
            config_hash: config_hash(cfg),
            config: cfg.clone(),
            descriptor: write_descriptor(design),
            rate: design.rate(),
            points,
            outage,
            software_version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix,
            finished_unix: Self::now(),
        }
    }
}

pub fn config_hash(cfg: &SimConfig) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// CSV with [`CSV_HEADER`], plus an `outage` column when present.
pub fn write_curve_csv(record: &RunRecord) -> Result<String, SimError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if record.outage.is_some() {
        header.push("outage");
    }
    w.write_record(&header)?;
    for (i, p) in record.points.iter().enumerate() {
        let mut row = vec![
            p.ebn0_db.to_string(),
            p.frames.to_string(),
            p.frame_errors.to_string(),
            p.bit_errors.to_string(),
            p.fer.to_string(),
            p.ber.to_string(),
            p.avg_iters.to_string(),
        ];
        if let Some(o) = &record.outage {
            row.push(o[i].to_string());
        }
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| SimError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ASCII output"))
}

#[derive(Deserialize)]
struct CsvRow {
    ebn0_db: f64,
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    fer: f64,
    ber: f64,
    avg_iters: f64,
}

/// Reads a curve written by [`write_curve_csv`]; wall clock and iteration
/// totals not stored in the CSV are reconstructed or zero.
pub fn read_curve_csv(text: &str) -> Result<Vec<FerPoint>, SimError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row?;
            Ok(FerPoint {
                ebn0_db: row.ebn0_db,
                frames: row.frames,
                frame_errors: row.frame_errors,
                bit_errors: row.bit_errors,
                fer: row.fer,
                ber: row.ber,
                avg_iters: row.avg_iters,
                iterations_total: (row.avg_iters * row.frames as f64).round() as u64,
                wall_clock_s: 0.0,
            })
        })
        .collect()
}

/// Negated least-squares slope of log10(FER) against log10(Eb/N0) over
/// the points with `lo ≤ FER ≤ hi`.
pub fn estimate_diversity_slope(points: &[FerPoint], lo: f64, hi: f64) -> Result<f64, SimError> {
    let sel: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.fer > 0.0 && p.fer >= lo && p.fer <= hi)
        .map(|p| (p.ebn0_db / 10.0, p.fer.log10()))
        .collect();
    if sel.len() < 2 {
        return Err(SimError::InsufficientPoints { got: sel.len() });
    }
    let n = sel.len() as f64;
    let mx = sel.iter().map(|p| p.0).sum::<f64>() / n;
    let my = sel.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = sel.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = sel.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(SimError::InsufficientPoints { got: 1 });
    }
    Ok(-sxy / sxx)
}

/// `(Eb/N0, mean decoder iterations)` per point.
pub fn avg_iterations_report(points: &[FerPoint]) -> Vec<(f64, f64)> {
    points.iter().map(|p| (p.ebn0_db, p.avg_iters)).collect()
}
