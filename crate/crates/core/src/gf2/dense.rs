//! Bit-packed dense rows used inside elimination. Sparse storage is the
//! public representation; this is only a working format.

use super::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        DenseMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub(crate) fn from_sparse(m: &BitMatrix) -> Self {
        let mut d = Self::zeros(m.rows(), m.cols());
        for (r, c) in m.edges() {
            d.set(r, c);
        }
        d
    }

    pub(crate) fn to_sparse(&self) -> BitMatrix {
        let edges = (0..self.rows).flat_map(|r| self.row_ones(r).map(move |c| (r, c)));
        BitMatrix::from_edges(self.rows, self.cols, edges).expect("dense bits map to unique entries")
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / 64] |= 1 << (c % 64);
    }

    pub(crate) fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let words = &self.data[r * self.stride..(r + 1) * self.stride];
        words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + tz)
            })
        })
    }

    /// `row[dst] ^= other.row[src]`
    pub(crate) fn xor_row_from(&mut self, dst: usize, other: &DenseMatrix, src: usize) {
        debug_assert_eq!(self.stride, other.stride);
        let s = self.stride;
        let (d, o) = (&mut self.data[dst * s..(dst + 1) * s], &other.data[src * s..(src + 1) * s]);
        for (a, b) in d.iter_mut().zip(o) {
            *a ^= *b;
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        if dst == src {
            return;
        }
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x ^= *y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    /// Gauss-Jordan elimination visiting columns in `order`. Returns the
    /// pivot columns in the order they were found. `companion`, if given,
    /// receives the same row operations.
    pub(crate) fn eliminate(&mut self, order: &[usize], mut companion: Option<&mut DenseMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for &c in order {
            if next_row == self.rows {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next_row);
            if let Some(comp) = companion.as_deref_mut() {
                comp.swap_rows(p, next_row);
            }
            for r in 0..self.rows {
                if r != next_row && self.get(r, c) {
                    self.xor_rows(r, next_row);
                    if let Some(comp) = companion.as_deref_mut() {
                        comp.xor_rows(r, next_row);
                    }
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        pivots
    }
}
