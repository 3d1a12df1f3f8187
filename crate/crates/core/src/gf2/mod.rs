//! Sparse linear algebra over GF(2).

mod alist;
pub(crate) mod dense;
mod girth;
mod grid;
mod linalg;
mod matrix;

pub use alist::{alist_read, alist_write};
pub use girth::{girth, Girth, GirthReport};
pub use grid::{assemble, make_circulant, BlockGrid, Cell};
pub use linalg::{information_set, invert_gf2, rank_gf2, solve_gf2, InformationSet};
pub use matrix::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("singular matrix: rank {rank} < {dim}")]
    SingularMatrix { rank: usize, dim: usize },
    #[error("shift {shift} out of range for block size {n}")]
    ShiftOutOfRange { shift: usize, n: usize },
    #[error("duplicate shift {0}")]
    DuplicateShift(usize),
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
}
