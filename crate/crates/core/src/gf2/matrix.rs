use std::fmt;

use super::dense::DenseMatrix;
use super::Gf2Error;

/// Sparse binary matrix stored as mutually consistent row and column
/// adjacency lists. Index lists are kept sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows, cols, row_adj: vec![Vec::new(); rows], col_adj: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.row_adj[i].push(i);
            m.col_adj[i].push(i);
        }
        m
    }

    /// Builds a matrix from an edge list, rejecting duplicates and
    /// out-of-range indices.
    pub fn from_edges<I>(rows: usize, cols: usize, edges: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in edges {
            if r >= rows || c >= cols {
                return Err(Gf2Error::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            m.row_adj[r].push(c);
            m.col_adj[c].push(r);
        }
        for (r, adj) in m.row_adj.iter_mut().enumerate() {
            adj.sort_unstable();
            if let Some(w) = adj.windows(2).find(|w| w[0] == w[1]) {
                return Err(Gf2Error::DuplicateEntry { row: r, col: w[0] });
            }
        }
        for adj in m.col_adj.iter_mut() {
            adj.sort_unstable();
        }
        Ok(m)
    }

    /// Like [`BitMatrix::from_edges`] but XORs repeated entries, which is
    /// what a GF(2) sum of overlapping patterns means.
    pub fn from_edges_xor<I>(rows: usize, cols: usize, edges: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = edges.into_iter().collect();
        list.sort_unstable();
        let mut kept = Vec::with_capacity(list.len());
        let mut i = 0;
        while i < list.len() {
            let mut j = i;
            while j < list.len() && list[j] == list[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                kept.push(list[i]);
            }
            i = j;
        }
        Self::from_edges(rows, cols, kept)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    /// Column indices of the ones in row `r`, ascending.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_adj[r]
    }

    /// Row indices of the ones in column `c`, ascending.
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_adj[c]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_adj[r].len()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        self.col_adj[c].len()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        r < self.rows && self.row_adj[r].binary_search(&c).is_ok()
    }

    /// All `(row, col)` entries in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_adj.iter().enumerate().flat_map(|(r, adj)| adj.iter().map(move |&c| (r, c)))
    }

    /// Inserts `(r, c)`; returns false if it was already present.
    pub(crate) fn insert(&mut self, r: usize, c: usize) -> bool {
        match self.row_adj[r].binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.row_adj[r].insert(pos, c);
                let cpos = self.col_adj[c].binary_search(&r).unwrap_err();
                self.col_adj[c].insert(cpos, r);
                true
            }
        }
    }

    /// Copy of `self` with entry `(r, c)` cleared.
    pub fn without_entry(&self, r: usize, c: usize) -> BitMatrix {
        let mut m = self.clone();
        if let Ok(pos) = m.row_adj[r].binary_search(&c) {
            m.row_adj[r].remove(pos);
            let cpos = m.col_adj[c].binary_search(&r).unwrap();
            m.col_adj[c].remove(cpos);
        }
        m
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix { rows: self.cols, cols: self.rows, row_adj: self.col_adj.clone(), col_adj: self.row_adj.clone() }
    }

    /// Matrix whose column `i` is column `columns[i]` of `self`.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let edges = columns.iter().enumerate().flat_map(|(new, &old)| self.col_adj[old].iter().map(move |&r| (r, new)));
        BitMatrix::from_edges(self.rows, columns.len(), edges)
            .expect("column selection keeps entries unique when columns are distinct")
    }

    /// Sub-matrix `[r0, r0+h) x [c0, c0+w)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> BitMatrix {
        let edges = (r0..r0 + h).flat_map(|r| {
            self.row_adj[r].iter().filter(move |&&c| c >= c0 && c < c0 + w).map(move |&c| (r - r0, c - c0))
        });
        BitMatrix::from_edges(h, w, edges).expect("sub-block of a valid matrix is valid")
    }

    /// `self · x` over GF(2) for a 0/1 vector `x`.
    pub fn mul_vec(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        self.row_adj.iter().map(|adj| adj.iter().fold(0u8, |acc, &c| acc ^ (x[c] & 1))).collect()
    }

    /// True when `x` is in the null space of `self`.
    pub fn syndrome_is_zero(&self, x: &[u8]) -> bool {
        self.row_adj.iter().all(|adj| adj.iter().fold(0u8, |acc, &c| acc ^ (x[c] & 1)) == 0)
    }

    /// GF(2) product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let rhs = DenseMatrix::from_sparse(other);
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for (r, adj) in self.row_adj.iter().enumerate() {
            for &k in adj {
                out.xor_row_from(r, &rhs, k);
            }
        }
        out.to_sparse()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.row_adj.iter().enumerate().all(|(r, adj)| adj.len() == 1 && adj[0] == r)
    }

    /// Row-major 0/1 rendering, handy in tests and debugging.
    pub fn to_dense_rows(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.cols]; self.rows];
        for (r, c) in self.edges() {
            out[r][c] = 1;
        }
        out
    }

    pub fn from_dense_rows(rows: &[Vec<u8>]) -> BitMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let edges = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, &b)| b & 1 == 1).map(move |(c, _)| (r, c)));
        BitMatrix::from_edges(rows.len(), cols, edges).expect("dense rows are well formed")
    }

    /// Places `other` at offset `(r0, c0)`, XOR-ing with existing entries.
    pub fn overlay(&self, other: &BitMatrix, r0: usize, c0: usize) -> Result<BitMatrix, Gf2Error> {
        if r0 + other.rows > self.rows || c0 + other.cols > self.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} block at ({r0},{c0}) does not fit in {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let edges = self.edges().chain(other.edges().map(|(r, c)| (r + r0, c + c0)));
        BitMatrix::from_edges_xor(self.rows, self.cols, edges)
    }

    /// Checks the adjacency invariants; used by tests and validation.
    pub fn check_invariants(&self) -> bool {
        let mut count = 0usize;
        for (r, adj) in self.row_adj.iter().enumerate() {
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &c in adj {
                if c >= self.cols || self.col_adj[c].binary_search(&r).is_err() {
                    return false;
                }
            }
            count += adj.len();
        }
        count == self.col_adj.iter().map(Vec::len).sum::<usize>()
    }
}
