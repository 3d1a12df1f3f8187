//! Repeat-accumulate root codes: single accumulator (IRA) and two
//! accumulators joined by an interleaver (IRAA).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::layout::{parity_full_rank, shifted_identity, Skeleton};
use super::{require_divisible, with_retries, CodeDesign, Family, FamilyError};
use crate::gf2::BitMatrix;
use crate::peg::{peg_construct, ColumnMasks, DegreeSequence, IndicatorMask, PegOptions};

/// Row block of the upper and lower half of each three-block accumulator
/// `Q_k`, F = 3.
const Q_ROWS: [(usize, usize); 3] = [(2, 4), (5, 0), (1, 3)];

/// Identity row blocks per information group, F = 3.
const I_ROWS: [[usize; 2]; 3] = [[0, 1], [2, 3], [4, 5]];

/// PEG row blocks per information group, F = 3.
const PEG_ROWS: [[usize; 2]; 3] = [[2, 4], [0, 5], [1, 3]];

/// IRA root code, rate 1/F for F ∈ {2, 3}.
pub fn build_ira_root(n: usize, f: usize, seed: u64) -> Result<CodeDesign, FamilyError> {
    match f {
        2 => {
            require_divisible(n, 4)?;
            with_retries(seed, |seed| {
                let s = n / 4;
                let mut sk = Skeleton::new(2 * s, n);
                two_block_info(&mut sk, s);
                dual_accumulator(&mut sk, 0, 3 * s, s);
                dual_accumulator(&mut sk, s, 2 * s, s);
                sk.columns(2 * s..3 * s, Some(0), false);
                sk.columns(3 * s..4 * s, Some(1), false);
                sk.null(0..s, 2 * s..3 * s);
                sk.null(s..2 * s, 3 * s..4 * s);
                finish_two_block(sk, s, Family::IraRoot, seed)
            })
        }
        3 => {
            require_divisible(n, 9)?;
            with_retries(seed, |seed| {
                let chi = n / 9;
                let mut sk = Skeleton::new(6 * chi, n);
                three_block_info(&mut sk, chi);
                triple_accumulators(&mut sk, 0, 3 * chi, chi, true);
                finish_three_block(sk, chi, Family::IraRoot, seed)
            })
        }
        _ => Err(FamilyError::Unsupported(format!("IRA root codes need F in 2..=3, got {f}"))),
    }
}

/// IRAA root code. Unpunctured rates are 1/3 (F = 2) and 1/5 (F = 3);
/// puncturing the second accumulator stage gives 1/2 and 1/3.
pub fn build_iraa_root(n: usize, f: usize, punctured: bool, seed: u64) -> Result<CodeDesign, FamilyError> {
    match f {
        2 => {
            require_divisible(n, 6)?;
            with_retries(seed, |seed| {
                let s = n / 6;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut sk = Skeleton::new(4 * s, n);
                // columns: 1i 2i 1b 2b 1p 2p
                two_block_info(&mut sk, s);
                dual_accumulator(&mut sk, 0, 3 * s, s);
                dual_accumulator(&mut sk, s, 2 * s, s);
                sk.put(2 * s, 2 * s, &random_permutation(2 * s, &mut rng));
                dual_accumulator(&mut sk, 2 * s, 5 * s, s);
                dual_accumulator(&mut sk, 3 * s, 4 * s, s);
                sk.columns(2 * s..3 * s, Some(0), false);
                sk.columns(3 * s..4 * s, Some(1), false);
                sk.columns(4 * s..5 * s, (!punctured).then_some(0), false);
                sk.columns(5 * s..6 * s, (!punctured).then_some(1), false);
                sk.null(0..s, 2 * s..3 * s);
                sk.null(s..2 * s, 3 * s..4 * s);
                sk.null(0..2 * s, 4 * s..6 * s);
                sk.null(2 * s..3 * s, 4 * s..5 * s);
                sk.null(3 * s..4 * s, 5 * s..6 * s);
                finish_two_block(sk, s, Family::IraaRoot, rng.random())
            })
        }
        3 => {
            require_divisible(n, 15)?;
            with_retries(seed, |seed| {
                let chi = n / 15;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut sk = Skeleton::new(12 * chi, n);
                // columns: 1i 2i 3i | Q1b Q2b Q3b | Q1p Q2p Q3p
                three_block_info(&mut sk, chi);
                triple_accumulators(&mut sk, 0, 3 * chi, chi, true);
                sk.put(6 * chi, 3 * chi, &random_permutation(6 * chi, &mut rng));
                triple_accumulators(&mut sk, 6 * chi, 9 * chi, chi, !punctured);
                sk.null(0..6 * chi, 9 * chi..15 * chi);
                finish_three_block(sk, chi, Family::IraaRoot, rng.random())
            })
        }
        _ => Err(FamilyError::Unsupported(format!("IRAA root codes need F in 2..=3, got {f}"))),
    }
}

pub(crate) fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> BitMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    BitMatrix::from_edges(n, n, perm.into_iter().enumerate()).expect("permutation")
}

/// Information columns `0..2s`: identities at rows `0..s` (1i) and
/// `s..2s` (2i).
pub(crate) fn two_block_info(sk: &mut Skeleton, s: usize) {
    sk.put(0, 0, &shifted_identity(s, 0));
    sk.put(s, s, &shifted_identity(s, 0));
    sk.columns(0..s, Some(0), true);
    sk.columns(s..2 * s, Some(1), true);
}

/// Dual-diagonal accumulator on rows `r0..r0+len`, columns `c0..c0+len`.
pub(crate) fn dual_accumulator(sk: &mut Skeleton, r0: usize, c0: usize, len: usize) {
    sk.put(r0, c0, &super::layout::dual_diagonal(len));
    sk.schedule_diag(r0, c0, len);
}

/// Three `1/(1+D+D^χ)` accumulators `Q_k` of width 2χ starting at column
/// `q0`, on the six row blocks starting at row `r0`.
fn triple_accumulators(sk: &mut Skeleton, r0: usize, q0: usize, chi: usize, transmitted: bool) {
    for (k, &(top, bottom)) in Q_ROWS.iter().enumerate() {
        let c0 = q0 + 2 * chi * k;
        for j in 0..2 * chi {
            let row = r0 + if j < chi { top * chi + j } else { bottom * chi + j - chi };
            sk.edges.push((row, c0 + j));
            if j >= 1 {
                sk.edges.push((row, c0 + j - 1));
            }
            if j >= chi {
                sk.edges.push((row, c0 + j - chi));
            }
            sk.schedule.push((row, c0 + j));
        }
        sk.columns(c0..c0 + 2 * chi, transmitted.then_some(k), false);
        for rb in (0..6).filter(|&rb| rb != top && rb != bottom) {
            sk.null(r0 + rb * chi..r0 + (rb + 1) * chi, c0..c0 + 2 * chi);
        }
    }
}

/// Information columns `0..3χ` with two identities each.
fn three_block_info(sk: &mut Skeleton, chi: usize) {
    for (k, rows) in I_ROWS.iter().enumerate() {
        for &rb in rows {
            sk.put(rb * chi, k * chi, &shifted_identity(chi, 0));
        }
        sk.columns(k * chi..(k + 1) * chi, Some(k), true);
        for rb in (0..6).filter(|rb| !rows.contains(rb) && !PEG_ROWS[k].contains(rb)) {
            sk.null(rb * chi..(rb + 1) * chi, k * chi..(k + 1) * chi);
        }
    }
}

/// Adds weight-2 information edges in the opposite half and finalizes.
fn finish_two_block(sk: Skeleton, s: usize, family: Family, peg_seed: u64) -> Result<Option<CodeDesign>, FamilyError> {
    let m = sk.m;
    let mut of_column = vec![2; sk.n];
    of_column[..s].fill(1);
    of_column[s..2 * s].fill(0);
    let masks = ColumnMasks {
        masks: vec![IndicatorMask::from_range(m, 0, s), IndicatorMask::from_range(m, s, 2 * s), IndicatorMask::none(m)],
        of_column,
    };
    let ds = DegreeSequence((0..sk.n).map(|c| if c < 2 * s { 2 } else { 0 }).collect());
    let h = peg_construct(&sk.matrix()?, &ds, &masks, &PegOptions::default(), peg_seed)?;
    let d = sk.finalize(&h, family, 2, None)?;
    Ok(parity_full_rank(&d).then_some(d))
}

/// Adds one information edge per PEG row block and finalizes.
fn finish_three_block(
    sk: Skeleton,
    chi: usize,
    family: Family,
    peg_seed: u64,
) -> Result<Option<CodeDesign>, FamilyError> {
    let m = sk.m;
    let mut masks: Vec<IndicatorMask> =
        PEG_ROWS.iter().map(|rows| IndicatorMask::from_row_blocks(m, chi, rows)).collect();
    masks.push(IndicatorMask::none(m));
    let of_column = (0..sk.n).map(|c| if c < 3 * chi { c / chi } else { 3 }).collect();
    let masks = ColumnMasks { masks, of_column };
    let ds = DegreeSequence((0..sk.n).map(|c| if c < 3 * chi { 2 } else { 0 }).collect());
    let opts = PegOptions { exclusive_segment: Some(chi) };
    let h = peg_construct(&sk.matrix()?, &ds, &masks, &opts, peg_seed)?;
    let d = sk.finalize(&h, family, 3, None)?;
    Ok(parity_full_rank(&d).then_some(d))
}
