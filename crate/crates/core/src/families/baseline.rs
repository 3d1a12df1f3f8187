//! Regular column-weight-3 PEG and QC-PEG codes without root structure.

use super::{with_retries, CodeDesign, Family, FamilyError};
use crate::gf2::{information_set, BitMatrix};
use crate::peg::{
    peg_construct, qc_peg_construct, ColumnMasks, DegreeSequence, IndicatorMask, PegOptions, QcPegParams,
};

pub const BASELINE_COLUMN_WEIGHT: usize = 3;

/// Circulant size used by the QC baseline with `m` checks: N/16 when it
/// divides both dimensions, else N/9.
pub fn baseline_block_size(n: usize, m: usize) -> Option<usize> {
    [16, 9].into_iter().find(|d| n.is_multiple_of(*d) && m.is_multiple_of(n / d)).map(|d| n / d)
}

/// Baseline of rate `num/den` split into `f` equal fading blocks of
/// consecutive columns. Parity columns are the pivots found scanning
/// from the last column backwards.
pub fn build_baseline_peg(
    n: usize,
    f: usize,
    rate: (usize, usize),
    qc: bool,
    seed: u64,
) -> Result<CodeDesign, FamilyError> {
    let (num, den) = rate;
    if num == 0 || num >= den || !(n * (den - num)).is_multiple_of(den) {
        return Err(FamilyError::Unsupported(format!("rate {num}/{den} at N = {n}")));
    }
    super::require_divisible(n, f)?;
    let m = n * (den - num) / den;
    let z = if qc {
        let z = baseline_block_size(n, m)
            .ok_or_else(|| FamilyError::Unsupported(format!("no circulant size N/16 or N/9 fits {m}x{n}")))?;
        Some(z)
    } else {
        None
    };
    let family = if qc { Family::QcPeg } else { Family::Peg };
    with_retries(seed, |seed| {
        let init = BitMatrix::zeros(m, n);
        let h = match z {
            Some(z) => {
                let groups = n / z;
                let p = QcPegParams {
                    n: z,
                    ds: DegreeSequence::uniform(groups, BASELINE_COLUMN_WEIGHT),
                    masks: vec![IndicatorMask::all(m); groups],
                    random_first: vec![false; groups],
                };
                qc_peg_construct(&init, &p, seed)?
            }
            None => peg_construct(
                &init,
                &DegreeSequence::uniform(n, BASELINE_COLUMN_WEIGHT),
                &ColumnMasks::uniform(IndicatorMask::all(m), n),
                &PegOptions::default(),
                seed,
            )?,
        };
        let order: Vec<usize> = (0..n).rev().collect();
        let set = information_set(&h, &order);
        if set.pivots.len() != m {
            return Ok(None);
        }
        let mut info_columns = set.free;
        info_columns.sort_unstable();
        let mut parity_columns = set.pivots;
        parity_columns.sort_unstable();
        Ok(Some(CodeDesign {
            h,
            family,
            n,
            k: info_columns.len(),
            f,
            block_of_column: (0..n).map(|c| Some(c * f / n)).collect(),
            info_columns,
            parity_columns,
            punctured_columns: Vec::new(),
            seed,
            attempts: 1,
            qc_block_size: z,
            accumulator_schedule: None,
            null_regions: Vec::new(),
        }))
    })
}
