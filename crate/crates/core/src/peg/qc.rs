use rand::seq::IndexedRandom;
use rand::Rng;

use super::{place_one, DegreeSequence, IndicatorMask, PegError, PlacementState};
use crate::gf2::BitMatrix;

/// Inputs for [`qc_peg_construct`]; everything is indexed by column group
/// (consecutive runs of `n` columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcPegParams {
    pub n: usize,
    /// Circulant blocks to add per group.
    pub ds: DegreeSequence,
    /// Row mask per group, length M.
    pub masks: Vec<IndicatorMask>,
    /// Groups whose first block goes to a random minimum-weight row block
    /// instead of being chosen through the tree.
    pub random_first: Vec<bool>,
}

/// Places the circulant permutation whose column `col0` has its one in
/// row `row_block·n + a`.
fn place_circulant(state: &mut PlacementState, n: usize, row_block: usize, a: usize, col0: usize) {
    for t in 0..n {
        let added = state.add_edge(row_block * n + (a + t) % n, col0 + t);
        debug_assert!(added, "circulant placement overlaps an existing entry");
    }
}

/// QC variant of PEG: each placement picks a row for the group's first
/// column, then fills the n×n block diagonally from it so that the block
/// is a circulant permutation, and removes that block from the group's
/// mask. Blocks already occupied in `init` are removed up front.
pub fn qc_peg_construct(init: &BitMatrix, p: &QcPegParams, seed: u64) -> Result<BitMatrix, PegError> {
    let (m, cols, n) = (init.rows(), init.cols(), p.n);
    if n == 0 || m % n != 0 || cols % n != 0 {
        return Err(PegError::NonDivisibleDimensions { rows: m, cols, n });
    }
    let groups = cols / n;
    if p.ds.len() != groups {
        return Err(PegError::DegreeLength { got: p.ds.len(), want: groups });
    }
    if p.masks.len() != groups || p.random_first.len() != groups {
        return Err(PegError::DegreeLength { got: p.masks.len().min(p.random_first.len()), want: groups });
    }
    if let Some(bad) = p.masks.iter().find(|k| k.len() != m) {
        return Err(PegError::MaskLength { got: bad.len(), want: m });
    }
    let row_blocks = m / n;
    let mut masks = p.masks.clone();
    for (g, mask) in masks.iter_mut().enumerate() {
        for c in g * n..(g + 1) * n {
            for &r in init.col(c) {
                let b = r / n;
                mask.set_range(b * n, (b + 1) * n, false);
            }
        }
    }

    let mut state = PlacementState::new(init.clone(), seed);
    for g in 0..groups {
        let col0 = g * n;
        for k in 0..p.ds.0[g] {
            let (row_block, a) = if k == 0 && p.random_first[g] {
                let open: Vec<usize> = (0..row_blocks).filter(|&b| masks[g].allows(b * n)).collect();
                let weight = |b: usize| -> usize { state.check_weights()[b * n..(b + 1) * n].iter().sum() };
                let min = open.iter().map(|&b| weight(b)).min().ok_or(PegError::NoCandidate { column: col0 })?;
                let best: Vec<usize> = open.into_iter().filter(|&b| weight(b) == min).collect();
                let b = *best.choose(state.rng()).expect("non-empty");
                let a = state.rng().random_range(0..n);
                (b, a)
            } else {
                let r = place_one(&mut state, col0, &masks[g])?;
                (r / n, r % n)
            };
            place_circulant(&mut state, n, row_block, a, col0);
            masks[g].set_range(row_block * n, (row_block + 1) * n, false);
        }
    }
    Ok(state.into_graph())
}

/// True when every n×n block of `m` is zero or a circulant (closed under the
/// diagonal shift `(i, j) → (i+1, j+1) mod n`).
pub fn blocks_are_circulant(m: &BitMatrix, n: usize) -> bool {
    m.edges().all(|(r, c)| {
        let (br, bc) = (r / n * n, c / n * n);
        m.contains(br + (r - br + 1) % n, bc + (c - bc + 1) % n)
    })
}
