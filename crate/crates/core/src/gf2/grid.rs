use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{BitMatrix, Gf2Error};

/// One n×n tile of a [`BlockGrid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Null,
    /// Cyclically shifted identity.
    Identity {
        shift: usize,
    },
    /// Sum of shifted identities, one per distinct shift.
    Circulant {
        shifts: Vec<usize>,
    },
    /// Lower bidiagonal accumulator: ones at (i, i) and (i, i−1).
    DualDiagonal,
    /// Uniform random permutation matrix drawn from `seed`.
    PermutationRandom {
        seed: u64,
    },
    Dense(BitMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    block_size: usize,
    cells: Vec<Vec<Cell>>,
}

impl BlockGrid {
    pub fn new(block_size: usize, cells: Vec<Vec<Cell>>) -> Result<Self, Gf2Error> {
        if block_size == 0 {
            return Err(Gf2Error::MalformedGrid("block size must be at least 1".into()));
        }
        let width = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || width == 0 {
            return Err(Gf2Error::MalformedGrid("grid has no cells".into()));
        }
        if let Some(r) = cells.iter().position(|row| row.len() != width) {
            return Err(Gf2Error::MalformedGrid(format!("row {r} has {} cells, expected {width}", cells[r].len())));
        }
        for (i, row) in cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Cell::Dense(m) = cell {
                    if m.rows() != block_size || m.cols() != block_size {
                        return Err(Gf2Error::MalformedGrid(format!(
                            "dense cell ({i},{j}) is {}x{}, expected {block_size}x{block_size}",
                            m.rows(),
                            m.cols()
                        )));
                    }
                }
            }
        }
        Ok(BlockGrid { block_size, cells })
    }

    /// All-null grid of the given shape.
    pub fn null(block_size: usize, grid_rows: usize, grid_cols: usize) -> Result<Self, Gf2Error> {
        Self::new(block_size, vec![vec![Cell::Null; grid_cols]; grid_rows])
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn grid_rows(&self) -> usize {
        self.cells.len()
    }

    pub fn grid_cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, cell: Cell) {
        self.cells[i][j] = cell;
    }
}

/// n×n matrix with ones at `(i, (i+s) mod n)` for each shift `s`.
pub fn make_circulant(n: usize, shifts: &[usize]) -> Result<BitMatrix, Gf2Error> {
    if n == 0 || shifts.is_empty() {
        return Err(Gf2Error::MalformedGrid("circulant needs n ≥ 1 and at least one shift".into()));
    }
    let mut seen = vec![false; n];
    for &s in shifts {
        if s >= n {
            return Err(Gf2Error::ShiftOutOfRange { shift: s, n });
        }
        if seen[s] {
            return Err(Gf2Error::DuplicateShift(s));
        }
        seen[s] = true;
    }
    let edges = shifts.iter().flat_map(|&s| (0..n).map(move |i| (i, (i + s) % n)));
    BitMatrix::from_edges(n, n, edges)
}

fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn expand(cell: &Cell, n: usize) -> Result<Vec<(usize, usize)>, Gf2Error> {
    Ok(match cell {
        Cell::Null => Vec::new(),
        Cell::Identity { shift } => make_circulant(n, &[*shift])?.edges().collect(),
        Cell::Circulant { shifts } => make_circulant(n, shifts)?.edges().collect(),
        Cell::DualDiagonal => (0..n).map(|i| (i, i)).chain((1..n).map(|i| (i, i - 1))).collect(),
        Cell::PermutationRandom { seed } => random_permutation(n, *seed).into_iter().enumerate().collect(),
        Cell::Dense(m) => m.edges().collect(),
    })
}

/// Expands every cell and tiles the result.
pub fn assemble(grid: &BlockGrid) -> Result<BitMatrix, Gf2Error> {
    let n = grid.block_size;
    let mut edges = Vec::new();
    for (i, row) in grid.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            edges.extend(expand(cell, n)?.into_iter().map(|(r, c)| (i * n + r, j * n + c)));
        }
    }
    BitMatrix::from_edges(grid.grid_rows() * n, grid.grid_cols() * n, edges)
}
