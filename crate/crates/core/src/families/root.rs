//! Random and quasi-cyclic root-check codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::layout::{parity_full_rank, random_shifts, shifted_identity, Skeleton};
use super::{
    require_divisible, with_retries, with_retries_max, CodeDesign, Family, FamilyError, RANDOM_ROOT_MAX_ATTEMPTS,
};
use crate::peg::{
    peg_construct, qc_peg_construct, ColumnMasks, DegreeSequence, IndicatorMask, PegOptions, QcPegParams,
};

/// Rate-1/2 root code for two fading blocks with PEG-placed sub-matrices:
///
/// ```text
/// [ I    H2i  0    H2p ]
/// [ H1i  I    H1p  0   ]
/// ```
///
/// Information sub-matrices get column weight 2, parity sub-matrices 3.
pub fn build_random_root_f2(n: usize, seed: u64) -> Result<CodeDesign, FamilyError> {
    require_divisible(n, 4)?;
    let s = n / 4;
    with_retries_max(seed, RANDOM_ROOT_MAX_ATTEMPTS, |seed| {
        let mut sk = Skeleton::new(2 * s, n);
        sk.put(0, 0, &shifted_identity(s, 0));
        sk.put(s, s, &shifted_identity(s, 0));
        sk.columns(0..s, Some(0), true);
        sk.columns(s..2 * s, Some(1), true);
        sk.columns(2 * s..3 * s, Some(0), false);
        sk.columns(3 * s..4 * s, Some(1), false);
        sk.null(0..s, 2 * s..3 * s);
        sk.null(s..2 * s, 3 * s..4 * s);

        let top = IndicatorMask::from_range(2 * s, 0, s);
        let bottom = IndicatorMask::from_range(2 * s, s, 2 * s);
        // column quarters: 1i → bottom, 2i → top, 1p → bottom, 2p → top
        let masks = ColumnMasks::by_group(vec![bottom.clone(), top.clone(), bottom, top], s);
        let ds = DegreeSequence((0..n).map(|c| if c < 2 * s { 2 } else { 3 }).collect());
        let h = peg_construct(&sk.matrix()?, &ds, &masks, &PegOptions::default(), seed)?;
        let d = sk.finalize(&h, Family::RandomRoot, 2, None)?;
        Ok(parity_full_rank(&d).then_some(d))
    })
}

/// QC root code for F ∈ {2, 3, 4}. Block sizes: N/16 for F = 2 and 4, N/9
/// for F = 3.
pub fn build_qc_root(n: usize, f: usize, seed: u64) -> Result<CodeDesign, FamilyError> {
    let layout = match f {
        2 => qc_layout_f2(),
        3 => qc_layout_f3(),
        4 => qc_layout_f4(),
        _ => return Err(FamilyError::Unsupported(format!("QC root codes need F in 2..=4, got {f}"))),
    };
    require_divisible(n, layout.groups)?;
    let z = n / layout.groups;
    with_retries(seed, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = layout.row_blocks * z;
        let mut sk = Skeleton::new(m, n);
        let shifts = random_shifts(&mut rng, z, layout.identities.len());
        for (&(rb, g), &sh) in layout.identities.iter().zip(&shifts) {
            sk.put(rb * z, g * z, &shifted_identity(z, sh));
        }
        for (g, &(block, info)) in layout.group_block.iter().enumerate() {
            sk.columns(g * z..(g + 1) * z, Some(block), info);
        }
        for &(rb, g) in &layout.nulls {
            sk.null(rb * z..(rb + 1) * z, g * z..(g + 1) * z);
        }
        let params = QcPegParams {
            n: z,
            ds: DegreeSequence(layout.ds.clone()),
            masks: layout.masks.iter().map(|blocks| IndicatorMask::from_row_blocks(m, z, blocks)).collect(),
            random_first: layout.random_first.clone(),
        };
        let h = qc_peg_construct(&sk.matrix()?, &params, rng.random())?;
        let d = sk.finalize(&h, Family::QcRoot, f, Some(z))?;
        Ok(parity_full_rank(&d).then_some(d))
    })
}

/// Block-level description of a QC root code.
struct QcLayout {
    groups: usize,
    row_blocks: usize,
    /// `(row block, column group)` of pre-placed shifted identities.
    identities: Vec<(usize, usize)>,
    /// Per group: fading block and information flag.
    group_block: Vec<(usize, bool)>,
    /// Per group: circulants to add, allowed row blocks and first-placement rule.
    ds: Vec<usize>,
    masks: Vec<Vec<usize>>,
    random_first: Vec<bool>,
    nulls: Vec<(usize, usize)>,
}

/// 8 × 16 blocks: four 4×4 quadrants. The information quadrants carry
/// identities on their diagonals, the parity quadrants are null on the
/// diagonal and shifted identities elsewhere.
fn qc_layout_f2() -> QcLayout {
    let mut identities = Vec::new();
    let mut nulls = Vec::new();
    for j in 0..4 {
        identities.push((j, j));
        identities.push((4 + j, 4 + j));
    }
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                identities.push((4 + i, 8 + j));
                identities.push((i, 12 + j));
            } else {
                nulls.push((4 + i, 8 + j));
                nulls.push((i, 12 + j));
            }
            nulls.push((i, 8 + j));
            nulls.push((4 + i, 12 + j));
        }
    }
    let top: Vec<usize> = (0..4).collect();
    let bottom: Vec<usize> = (4..8).collect();
    let mut group_block = Vec::new();
    let mut ds = Vec::new();
    let mut masks = Vec::new();
    for g in 0..16 {
        let (block, info) = match g {
            0..4 => (0, true),
            4..8 => (1, true),
            8..12 => (0, false),
            _ => (1, false),
        };
        group_block.push((block, info));
        ds.push(if info { 2 } else { 0 });
        masks.push(match g {
            0..4 => bottom.clone(),
            4..8 => top.clone(),
            _ => Vec::new(),
        });
    }
    QcLayout { groups: 16, row_blocks: 8, identities, group_block, ds, masks, random_first: vec![false; 16], nulls }
}

/// 6 × 9 blocks: three information groups, six parity groups.
fn qc_layout_f3() -> QcLayout {
    let masks: Vec<Vec<usize>> = vec![
        vec![2, 4],
        vec![0, 5],
        vec![1, 3],
        vec![3, 4, 5],
        vec![4, 5],
        vec![5],
        vec![0],
        vec![0, 1],
        vec![0, 1, 2],
    ];
    let block = [0, 1, 2, 0, 0, 1, 1, 2, 2];
    QcLayout {
        groups: 9,
        row_blocks: 6,
        identities: vec![(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)],
        group_block: (0..9).map(|g| (block[g], g < 3)).collect(),
        ds: masks.iter().map(Vec::len).collect(),
        random_first: (0..9).map(|g| g >= 3).collect(),
        nulls: complement_nulls(6, &masks, &[(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)]),
        masks,
    }
}

/// 12 × 16 blocks: four information groups with three identities each,
/// twelve parity groups arranged so the parity part is triangular.
fn qc_layout_f4() -> QcLayout {
    let masks: Vec<Vec<usize>> = vec![
        vec![3, 5, 6, 9, 11],
        vec![0, 2, 7, 10, 11],
        vec![1, 3, 4, 9, 10],
        vec![0, 2, 3, 5, 8],
        vec![6, 8, 10],
        vec![7, 9, 11],
        vec![8, 10],
        vec![9, 11],
        vec![10],
        vec![11],
        vec![0],
        vec![1],
        vec![0, 2],
        vec![1, 3],
        vec![0, 2, 4],
        vec![1, 3, 5],
    ];
    let identities: Vec<(usize, usize)> = (0..4).flat_map(|j| (0..3).map(move |k| (3 * j + k, j))).collect();
    let group_block: Vec<(usize, bool)> =
        (0..16).map(|g| if g < 4 { (g, true) } else { ((g - 4) / 3, false) }).collect();
    QcLayout {
        groups: 16,
        row_blocks: 12,
        ds: (0..16).map(|g| if g < 4 { 2 } else { masks[g].len() }).collect(),
        random_first: (0..16).map(|g| g >= 4).collect(),
        nulls: complement_nulls(12, &masks, &identities),
        identities,
        group_block,
        masks,
    }
}

/// Blocks outside every group's mask and identity positions.
fn complement_nulls(row_blocks: usize, masks: &[Vec<usize>], identities: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, mask) in masks.iter().enumerate() {
        for rb in 0..row_blocks {
            if !mask.contains(&rb) && !identities.contains(&(rb, g)) {
                out.push((rb, g));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank_gf2;
    use crate::peg::blocks_are_circulant;

    #[test]
    fn random_root_dimensions_and_identities() {
        let d = build_random_root_f2(1024, 1).unwrap();
        assert_eq!((d.h.rows(), d.h.cols(), d.k), (512, 1024, 512));
        // transmission order: 1i (0..256), 1p (256..512), 2i, 2p
        assert!(d.h.block(0, 0, 256, 256).is_identity());
        assert!(d.h.block(256, 512, 256, 256).is_identity());
        for c in d.info_columns.iter().copied() {
            assert_eq!(d.h.col_weight(c), 3);
        }
        assert_eq!(rank_gf2(&d.parity_part()), 512);
    }

    #[test]
    fn qc_f3_identities_at_stated_blocks() {
        let d = build_qc_root(900, 3, 5).unwrap();
        assert_eq!((d.h.rows(), d.h.cols(), d.k), (600, 900, 300));
        assert!(blocks_are_circulant(&d.h, 100));
        // block of column group g in transmission order: info groups sit
        // at positions 0, 300, 600.
        let group_pos = [0, 300, 600];
        for &(rb, g) in &[(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)] {
            let b = d.h.block(rb * 100, group_pos[g], 100, 100);
            assert_eq!(b.nnz(), 100, "({rb},{g})");
        }
        // group 1 info edges outside identities only in row blocks 0 and 5
        for c in 300..400 {
            for &r in d.h.col(c) {
                assert!([0, 2, 3, 5].contains(&(r / 100)));
            }
        }
    }

    #[test]
    fn qc_f2_and_f4_are_circulant() {
        let d = build_qc_root(1024, 2, 3).unwrap();
        assert!(blocks_are_circulant(&d.h, 64));
        assert_eq!(d.k, 512);
        let d = build_qc_root(1024, 4, 3).unwrap();
        assert!(blocks_are_circulant(&d.h, 64));
        assert_eq!((d.h.rows(), d.k), (768, 256));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(build_qc_root(1000, 3, 0), Err(FamilyError::NonDivisibleDimensions { .. })));
        assert!(matches!(build_qc_root(1024, 5, 0), Err(FamilyError::Unsupported(_))));
    }
}
