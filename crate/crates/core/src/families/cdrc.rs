//! Controlled-doping root codes: every parity part is lower triangular
//! with identity, permutation and dual-diagonal sub-blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::layout::{dual_diagonal, parity_full_rank, random_shifts, shifted_identity, Skeleton};
use super::{require_divisible, with_retries, CodeDesign, Family, FamilyError};
use crate::peg::{peg_construct, ColumnMasks, DegreeSequence, IndicatorMask, PegOptions};

/// Identity row blocks per information group, F = 3.
const F3_IDENTITY: [[usize; 2]; 3] = [[2, 4], [0, 5], [1, 3]];
/// PEG row blocks per information group, F = 3.
const F3_PEG: [[usize; 2]; 3] = [[0, 1], [2, 3], [4, 5]];

/// Identity row blocks per information group, F = 4.
const F4_IDENTITY: [[usize; 3]; 4] = [[3, 6, 9], [0, 7, 10], [1, 4, 11], [2, 5, 8]];
/// PEG row blocks per information group, F = 4.
const F4_PEG: [[usize; 5]; 4] = [[0, 1, 2, 8, 10], [3, 4, 5, 8, 9], [0, 2, 5, 6, 7], [0, 3, 9, 10, 11]];

/// Controlled-doping root code of rate 1/F, F ∈ {2, 3, 4}.
pub fn build_cdrc(n: usize, f: usize, seed: u64) -> Result<CodeDesign, FamilyError> {
    match f {
        2 => {
            require_divisible(n, 8)?;
            with_retries(seed, |seed| build_f2(n, seed))
        }
        3 => {
            require_divisible(n, 9)?;
            with_retries(seed, |seed| build_f3(n, seed))
        }
        4 => {
            require_divisible(n, 16)?;
            with_retries(seed, |seed| build_f4(n, seed))
        }
        _ => Err(FamilyError::Unsupported(format!("CDRC codes need F in 2..=4, got {f}"))),
    }
}

/// `[I 0; P DD]` on rows `r0..r0+2h`, columns `c0..c0+2h`.
fn doped_two(sk: &mut Skeleton, r0: usize, c0: usize, h: usize, shift: usize) {
    sk.put(r0, c0, &shifted_identity(h, 0));
    sk.put(r0 + h, c0, &shifted_identity(h, shift));
    sk.put(r0 + h, c0 + h, &dual_diagonal(h));
    sk.schedule_diag(r0, c0, 2 * h);
}

fn build_f2(n: usize, seed: u64) -> Result<Option<CodeDesign>, FamilyError> {
    let (s, h) = (n / 4, n / 8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sk = Skeleton::new(2 * s, n);
    sk.put(0, 0, &shifted_identity(s, 0));
    sk.put(s, s, &shifted_identity(s, 0));
    sk.columns(0..s, Some(0), true);
    sk.columns(s..2 * s, Some(1), true);
    let p = random_shifts(&mut rng, h, 2);
    doped_two(&mut sk, 0, 3 * s, h, p[0]);
    doped_two(&mut sk, s, 2 * s, h, p[1]);
    sk.columns(2 * s..3 * s, Some(0), false);
    sk.columns(3 * s..4 * s, Some(1), false);
    sk.null(0..s, 2 * s..3 * s);
    sk.null(s..2 * s, 3 * s..4 * s);

    let m = 2 * s;
    let mut of_column = vec![2; n];
    of_column[..s].fill(1);
    of_column[s..2 * s].fill(0);
    let masks = ColumnMasks {
        masks: vec![IndicatorMask::from_range(m, 0, s), IndicatorMask::from_range(m, s, 2 * s), IndicatorMask::none(m)],
        of_column,
    };
    let ds = DegreeSequence((0..n).map(|c| if c < 2 * s { 2 } else { 0 }).collect());
    let hm = peg_construct(&sk.matrix()?, &ds, &masks, &PegOptions::default(), rng.random())?;
    let d = sk.finalize(&hm, Family::Cdrc, 2, None)?;
    Ok(parity_full_rank(&d).then_some(d))
}

/// Columns: 1i 2i 3i | 1pa 1pb | 2pa 2pb | 3pa 3pb, each χ wide. Row block
/// `2k` holds `I` on `kpa`, row block `2k+1` holds `P_k` and `DD`.
fn build_f3(n: usize, seed: u64) -> Result<Option<CodeDesign>, FamilyError> {
    let chi = n / 9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sk = Skeleton::new(6 * chi, n);
    info_groups(&mut sk, chi, &F3_IDENTITY.map(|r| r.to_vec()), &F3_PEG.map(|r| r.to_vec()));
    let p = random_shifts(&mut rng, chi, 3);
    for k in 0..3 {
        let c0 = 3 * chi + 2 * chi * k;
        doped_two(&mut sk, 2 * k * chi, c0, chi, p[k]);
        sk.columns(c0..c0 + 2 * chi, Some(k), false);
    }
    finish_exclusive(sk, chi, 3, &F3_PEG.map(|r| r.to_vec()), rng.random())
}

/// Columns: 1i..4i | 1pa 1pb 1pc | … | 4pa 4pb 4pc, each ζ wide. The
/// parity part of block k is `[I 0 0; P I 0; P P DD]` on row blocks
/// `3k..3k+3`.
fn build_f4(n: usize, seed: u64) -> Result<Option<CodeDesign>, FamilyError> {
    let z = n / 16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sk = Skeleton::new(12 * z, n);
    info_groups(&mut sk, z, &F4_IDENTITY.map(|r| r.to_vec()), &F4_PEG.map(|r| r.to_vec()));
    let p = random_shifts(&mut rng, z, 12);
    for k in 0..4 {
        let (r0, c0) = (3 * k * z, 4 * z + 3 * z * k);
        let sh = &p[3 * k..3 * k + 3];
        sk.put(r0, c0, &shifted_identity(z, 0));
        sk.put(r0 + z, c0, &shifted_identity(z, sh[0]));
        sk.put(r0 + z, c0 + z, &shifted_identity(z, 0));
        sk.put(r0 + 2 * z, c0, &shifted_identity(z, sh[1]));
        sk.put(r0 + 2 * z, c0 + z, &shifted_identity(z, sh[2]));
        sk.put(r0 + 2 * z, c0 + 2 * z, &dual_diagonal(z));
        sk.schedule_diag(r0, c0, 3 * z);
        sk.columns(c0..c0 + 3 * z, Some(k), false);
    }
    finish_exclusive(sk, z, 4, &F4_PEG.map(|r| r.to_vec()), rng.random())
}

/// Information group `k` spans columns `k·z..(k+1)·z` with identities in
/// the listed row blocks; rows outside identities and PEG blocks stay null.
fn info_groups(sk: &mut Skeleton, z: usize, identity: &[Vec<usize>], peg: &[Vec<usize>]) {
    let row_blocks = sk.m / z;
    for (k, rows) in identity.iter().enumerate() {
        for &rb in rows {
            sk.put(rb * z, k * z, &shifted_identity(z, 0));
        }
        sk.columns(k * z..(k + 1) * z, Some(k), true);
        for rb in (0..row_blocks).filter(|rb| !rows.contains(rb) && !peg[k].contains(rb)) {
            sk.null(rb * z..(rb + 1) * z, k * z..(k + 1) * z);
        }
    }
}

/// Two PEG edges per information column in distinct row blocks.
fn finish_exclusive(
    sk: Skeleton,
    z: usize,
    f: usize,
    peg: &[Vec<usize>],
    peg_seed: u64,
) -> Result<Option<CodeDesign>, FamilyError> {
    let m = sk.m;
    let mut masks: Vec<IndicatorMask> = peg.iter().map(|rows| IndicatorMask::from_row_blocks(m, z, rows)).collect();
    masks.push(IndicatorMask::none(m));
    let info = f * z;
    let of_column = (0..sk.n).map(|c| if c < info { c / z } else { f }).collect();
    let masks = ColumnMasks { masks, of_column };
    let ds = DegreeSequence((0..sk.n).map(|c| if c < info { 2 } else { 0 }).collect());
    let opts = PegOptions { exclusive_segment: Some(z) };
    let h = peg_construct(&sk.matrix()?, &ds, &masks, &opts, peg_seed)?;
    let d = sk.finalize(&h, Family::Cdrc, f, None)?;
    Ok(parity_full_rank(&d).then_some(d))
}
