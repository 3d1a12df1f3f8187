//! Encoding, puncturing and decoding. LLRs are positive for bit 0; an
//! erased position carries LLR 0 and a known bit ±∞.

mod encode;
mod generator;
mod peel;
mod spa;

pub use encode::{depuncture, encode_accumulator, puncture};
pub use generator::{derive_generator, GeneratorMatrix};
pub use peel::{bec_peel, PeelOutcome};
pub use spa::{CheckRule, DecodeOutcome, SpaDecoder, SpaOptions};

use crate::families::Family;

/// Magnitude bound on check-to-variable messages.
pub const LLR_CLAMP: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("parity part singular (rank {rank} of {m})")]
    SingularParityPart { rank: usize, m: usize },
    #[error("length {got}, expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("{0} designs carry no accumulator schedule")]
    FamilyMismatch(Family),
    #[error("row {row} has unknown bits besides its pivot")]
    NonTriangular { row: usize },
}

/// Whitespace-separated text form of a bit or LLR vector.
pub fn vector_to_text<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn bits_from_text(s: &str) -> Result<Vec<u8>, String> {
    s.split_whitespace()
        .map(|t| match t {
            "0" => Ok(0),
            "1" => Ok(1),
            _ => Err(format!("bad bit {t:?}")),
        })
        .collect()
}

pub fn llrs_from_text(s: &str) -> Result<Vec<f64>, String> {
    s.split_whitespace().map(|t| t.parse::<f64>().map_err(|_| format!("bad LLR {t:?}"))).collect()
}
