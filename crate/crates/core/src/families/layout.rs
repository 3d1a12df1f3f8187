//! Structural column layout shared by the builders, and the final
//! reordering into transmission order.

use std::ops::Range;

use rand::seq::index::sample;
use rand::Rng;

use super::{CodeDesign, Family, FamilyError, NullRegion};
use crate::gf2::{make_circulant, rank_gf2, BitMatrix};

/// Code under construction in the column order of its defining block
/// equation.
#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Fading block per column, `None` when punctured.
    pub block: Vec<Option<usize>>,
    pub info: Vec<bool>,
    pub null_regions: Vec<(Range<usize>, Range<usize>)>,
    pub schedule: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn new(m: usize, n: usize) -> Self {
        Skeleton {
            m,
            n,
            edges: Vec::new(),
            block: vec![None; n],
            info: vec![false; n],
            null_regions: Vec::new(),
            schedule: Vec::new(),
        }
    }

    pub fn put(&mut self, r0: usize, c0: usize, mat: &BitMatrix) {
        self.edges.extend(mat.edges().map(|(r, c)| (r0 + r, c0 + c)));
    }

    pub fn columns(&mut self, cols: Range<usize>, block: Option<usize>, info: bool) {
        for c in cols {
            self.block[c] = block;
            self.info[c] = info;
        }
    }

    pub fn null(&mut self, rows: Range<usize>, cols: Range<usize>) {
        self.null_regions.push((rows, cols));
    }

    /// Pivots `(r0+i, c0+i)` for `i < len`.
    pub fn schedule_diag(&mut self, r0: usize, c0: usize, len: usize) {
        self.schedule.extend((0..len).map(|i| (r0 + i, c0 + i)));
    }

    pub fn matrix(&self) -> Result<BitMatrix, FamilyError> {
        Ok(BitMatrix::from_edges(self.m, self.n, self.edges.iter().copied())?)
    }

    /// Reorders `h` (structural order) into transmission order.
    pub fn finalize(
        &self,
        h: &BitMatrix,
        family: Family,
        f: usize,
        qc_block_size: Option<usize>,
    ) -> Result<CodeDesign, FamilyError> {
        let mut order = Vec::with_capacity(self.n);
        for b in 0..f {
            order.extend((0..self.n).filter(|&c| self.block[c] == Some(b) && self.info[c]));
            order.extend((0..self.n).filter(|&c| self.block[c] == Some(b) && !self.info[c]));
        }
        order.extend((0..self.n).filter(|&c| self.block[c].is_none()));
        debug_assert_eq!(order.len(), self.n);
        let mut new_of = vec![0; self.n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let h = BitMatrix::from_edges(h.rows(), h.cols(), h.edges().map(|(r, c)| (r, new_of[c])))?;
        let block_of_column: Vec<Option<usize>> = order.iter().map(|&c| self.block[c]).collect();
        let info_columns: Vec<usize> = (0..self.n).filter(|&c| self.info[order[c]]).collect();
        let parity_columns: Vec<usize> = (0..self.n).filter(|&c| !self.info[order[c]]).collect();
        let punctured_columns: Vec<usize> = (0..self.n).filter(|&c| block_of_column[c].is_none()).collect();
        let schedule =
            (!self.schedule.is_empty()).then(|| self.schedule.iter().map(|&(r, c)| (r, new_of[c])).collect());
        let null_regions = self
            .null_regions
            .iter()
            .map(|(rows, cols)| {
                let mut cols: Vec<usize> = cols.clone().map(|c| new_of[c]).collect();
                cols.sort_unstable();
                NullRegion { rows: rows.clone(), cols }
            })
            .collect();
        Ok(CodeDesign {
            h,
            family,
            n: self.n,
            k: info_columns.len(),
            f,
            block_of_column,
            info_columns,
            parity_columns,
            punctured_columns,
            seed: 0,
            attempts: 1,
            qc_block_size,
            accumulator_schedule: schedule,
            null_regions,
        })
    }
}

/// True when the parity part of `d` has full rank.
pub(crate) fn parity_full_rank(d: &CodeDesign) -> bool {
    d.parity_columns.len() == d.m() && rank_gf2(&d.parity_part()) == d.m()
}

pub(crate) fn shifted_identity(n: usize, shift: usize) -> BitMatrix {
    make_circulant(n, &[shift]).expect("shift below n")
}

pub(crate) fn dual_diagonal(n: usize) -> BitMatrix {
    BitMatrix::from_edges(n, n, (0..n).map(|i| (i, i)).chain((1..n).map(|i| (i, i - 1)))).expect("distinct entries")
}

/// `len` cyclic shifts in `[0, n)`, distinct whenever `n ≥ len`.
pub(crate) fn random_shifts<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<usize> {
    if len <= n {
        sample(rng, n, len).into_vec()
    } else {
        (0..len).map(|_| rng.random_range(0..n)).collect()
    }
}
