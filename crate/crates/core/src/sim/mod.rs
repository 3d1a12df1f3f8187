//! Frame-error-rate simulation over the block-fading channel.

mod config;
mod report;
mod run;

pub use config::{parse_grid, parse_key_values, parse_rate, Metric, SimConfig, CONFIG_KEYS};
pub use report::{
    avg_iterations_report, estimate_diversity_slope, read_curve_csv, write_curve_csv, RunRecord, CSV_HEADER,
};
pub use run::{run_fer_curve, run_fer_curve_with, run_fer_point, simulate_frame, substream, FrameResult, SimContext};

use serde::{Deserialize, Serialize};

use crate::codec::CodecError;
use crate::families::FamilyError;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("need at least 2 points inside the FER range, got {got}")]
    InsufficientPoints { got: usize },
    #[error("config: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FerPoint {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub avg_iters: f64,
    pub iterations_total: u64,
    pub wall_clock_s: f64,
}
