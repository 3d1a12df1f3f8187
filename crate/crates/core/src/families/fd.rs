//! Unstructured full-diversity codes built from F − 1 PEG sub-codes that
//! share the weight-2 column set V1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::layout::Skeleton;
use super::{require_divisible, with_retries, CodeDesign, Family, FamilyError};
use crate::gf2::information_set;
use crate::peg::{peg_construct, ColumnMasks, DegreeSequence, IndicatorMask, PegOptions};

/// Check rows of one sub-code of length `l`.
pub fn sub_code_rows(l: usize) -> usize {
    l / 2 + l.div_ceil(64)
}

/// Columns `V1, …, VF` of N/F each. Row group `i` is the sub-code
/// `[H_{α1,i} H_{α,i+1}]` over `V1` and `V_{i+1}`: V1 columns get weight 2
/// in every group and form a forest there, `V_{i+1}` columns weight 3.
pub fn build_unstructured_fd(n: usize, f: usize, seed: u64) -> Result<CodeDesign, FamilyError> {
    if !(2..=4).contains(&f) {
        return Err(FamilyError::Unsupported(format!("FD codes need F in 2..=4, got {f}")));
    }
    require_divisible(n, 2 * f)?;
    let w = n / f;
    let ms = sub_code_rows(2 * w);
    with_retries(seed, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sk = Skeleton::new((f - 1) * ms, n);
        let ds = DegreeSequence((0..2 * w).map(|c| if c < w { 2 } else { 3 }).collect());
        let masks = ColumnMasks::uniform(IndicatorMask::all(ms), 2 * w);
        for i in 0..f - 1 {
            let sub = peg_construct(
                &crate::gf2::BitMatrix::zeros(ms, 2 * w),
                &ds,
                &masks,
                &PegOptions::default(),
                rng.random(),
            )?;
            for (r, c) in sub.edges() {
                let col = if c < w { c } else { (i + 1) * w + c - w };
                sk.edges.push((i * ms + r, col));
            }
            for j in 0..f - 1 {
                if j != i {
                    sk.null(i * ms..(i + 1) * ms, (j + 1) * w..(j + 2) * w);
                }
            }
        }
        let h = sk.matrix()?;
        // parity columns: all of V2..VF, then as few V1 columns as needed
        let order: Vec<usize> = (w..n).chain(0..w).collect();
        let set = information_set(&h, &order);
        if set.pivots.len() != sk.m || !(w..n).all(|c| set.pivots.contains(&c)) {
            return Ok(None);
        }
        for b in 0..f {
            sk.columns(b * w..(b + 1) * w, Some(b), false);
        }
        for &c in &set.free {
            sk.info[c] = true;
        }
        Ok(Some(sk.finalize(&h, Family::UnstructuredFd, f, None)?))
    })
}
