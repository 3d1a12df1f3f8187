//! Builders for root-check LDPC families and comparison codes.

mod baseline;
mod cdrc;
mod descriptor;
mod fd;
mod layout;
mod ra;
mod root;
mod validate;

pub use baseline::{baseline_block_size, build_baseline_peg, BASELINE_COLUMN_WEIGHT};
pub use cdrc::build_cdrc;
pub use descriptor::{parse_descriptor, write_descriptor, Descriptor, DescriptorError};
pub use fd::{build_unstructured_fd, sub_code_rows};
pub use ra::{build_ira_root, build_iraa_root};
pub use root::{build_qc_root, build_random_root_f2};
pub use validate::{root_checks, validate_structure, StructureReport, Violation};

use std::fmt;
use std::str::FromStr;

use crate::gf2::{BitMatrix, Gf2Error};
use crate::peg::PegError;

/// Retries allowed when a construction ends with a singular parity part.
pub const MAX_ATTEMPTS: u32 = 32;

/// Retry bound for random root codes, whose two weight-3 parity blocks
/// are jointly invertible in roughly one attempt out of eight.
pub const RANDOM_ROOT_MAX_ATTEMPTS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parity part singular after {attempts} attempts")]
    SingularParityPart { attempts: u32 },
    #[error("N = {n} not divisible by {divisor}")]
    NonDivisibleDimensions { n: usize, divisor: usize },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Peg(#[from] PegError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Family {
    RandomRoot,
    QcRoot,
    IraRoot,
    IraaRoot,
    Cdrc,
    UnstructuredFd,
    Peg,
    QcPeg,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::RandomRoot,
        Family::QcRoot,
        Family::IraRoot,
        Family::IraaRoot,
        Family::Cdrc,
        Family::UnstructuredFd,
        Family::Peg,
        Family::QcPeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomRoot => "random-root",
            Family::QcRoot => "qc-root",
            Family::IraRoot => "ira-root",
            Family::IraaRoot => "iraa-root",
            Family::Cdrc => "cdrc",
            Family::UnstructuredFd => "fd",
            Family::Peg => "peg",
            Family::QcPeg => "qc-peg",
        }
    }

    /// Families built around root-check identity blocks.
    pub fn is_root(self) -> bool {
        matches!(self, Family::RandomRoot | Family::QcRoot | Family::IraRoot | Family::IraaRoot | Family::Cdrc)
    }

    /// Families whose parity part is solved by an accumulator schedule.
    pub fn has_accumulator(self) -> bool {
        matches!(self, Family::IraRoot | Family::IraaRoot | Family::Cdrc)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

impl TryFrom<String> for Family {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            format!("unknown family {s:?}; expected one of {}", names.join(", "))
        })
    }
}

/// Rows that must stay empty over a set of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullRegion {
    pub rows: std::ops::Range<usize>,
    pub cols: Vec<usize>,
}

/// A constructed code. Columns of `h` are in transmission order: fading
/// block 0 first, information columns before parity columns inside each
/// block, punctured columns last.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeDesign {
    pub h: BitMatrix,
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub f: usize,
    /// Fading block (0-based) of each column; `None` for punctured columns.
    pub block_of_column: Vec<Option<usize>>,
    pub info_columns: Vec<usize>,
    pub parity_columns: Vec<usize>,
    pub punctured_columns: Vec<usize>,
    /// Seed passed to the builder.
    pub seed: u64,
    /// Construction attempts used (1 when the first succeeded).
    pub attempts: u32,
    pub qc_block_size: Option<usize>,
    /// `(row, column)` pairs: solving each row for its column in order
    /// encodes the parity bits.
    pub accumulator_schedule: Option<Vec<(usize, usize)>>,
    pub null_regions: Vec<NullRegion>,
}

impl CodeDesign {
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    /// Number of transmitted bits.
    pub fn transmitted_len(&self) -> usize {
        self.n - self.punctured_columns.len()
    }

    /// Effective rate K / (N − |punctured|).
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.transmitted_len() as f64
    }

    /// Transmitted columns of fading block `b`.
    pub fn block_columns(&self, b: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.block_of_column[c] == Some(b)).collect()
    }

    /// Columns in transmission order (punctured ones removed).
    pub fn transmitted_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.block_of_column[c].is_some()).collect()
    }

    /// Parity sub-matrix B (columns = `parity_columns`).
    pub fn parity_part(&self) -> BitMatrix {
        self.h.select_columns(&self.parity_columns)
    }
}

/// Parameters accepted by [`build`].
#[derive(Clone, Debug, PartialEq)]
pub struct BuildSpec {
    pub family: Family,
    pub n: usize,
    pub f: usize,
    /// Only used by the baselines and IRAA (to decide puncturing).
    pub rate: Option<(usize, usize)>,
    pub seed: u64,
}

/// Dispatches to the family builders.
pub fn build(spec: &BuildSpec) -> Result<CodeDesign, FamilyError> {
    let rate_is = |num: usize, den: usize| spec.rate.is_some_and(|(a, b)| a * den == b * num);
    match spec.family {
        Family::RandomRoot => {
            if spec.f != 2 {
                return Err(FamilyError::Unsupported("random root codes need F = 2".into()));
            }
            build_random_root_f2(spec.n, spec.seed)
        }
        Family::QcRoot => build_qc_root(spec.n, spec.f, spec.seed),
        Family::IraRoot => build_ira_root(spec.n, spec.f, spec.seed),
        Family::IraaRoot => {
            let punctured = match spec.f {
                2 => spec.rate.is_none() || rate_is(1, 2),
                _ => rate_is(1, 3),
            };
            build_iraa_root(spec.n, spec.f, punctured, spec.seed)
        }
        Family::Cdrc => build_cdrc(spec.n, spec.f, spec.seed),
        Family::UnstructuredFd => build_unstructured_fd(spec.n, spec.f, spec.seed),
        Family::Peg | Family::QcPeg => {
            let rate = spec.rate.unwrap_or((1, spec.f.max(1)));
            build_baseline_peg(spec.n, spec.f, rate, spec.family == Family::QcPeg, spec.seed)
        }
    }
}

pub(crate) fn require_divisible(n: usize, divisor: usize) -> Result<(), FamilyError> {
    if n == 0 || !n.is_multiple_of(divisor) {
        return Err(FamilyError::NonDivisibleDimensions { n, divisor });
    }
    Ok(())
}

/// Runs `attempt` with seeds `seed, seed+1, …` until it yields a design
/// or a non-retryable error.
pub(crate) fn with_retries<F>(seed: u64, attempt: F) -> Result<CodeDesign, FamilyError>
where
    F: FnMut(u64) -> Result<Option<CodeDesign>, FamilyError>,
{
    with_retries_max(seed, MAX_ATTEMPTS, attempt)
}

pub(crate) fn with_retries_max<F>(seed: u64, max: u32, mut attempt: F) -> Result<CodeDesign, FamilyError>
where
    F: FnMut(u64) -> Result<Option<CodeDesign>, FamilyError>,
{
    for i in 0..max {
        if let Some(mut d) = attempt(seed.wrapping_add(u64::from(i)))? {
            d.seed = seed;
            d.attempts = i + 1;
            return Ok(d);
        }
    }
    Err(FamilyError::SingularParityPart { attempts: max })
}
