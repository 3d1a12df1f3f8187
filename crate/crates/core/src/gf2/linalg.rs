use super::dense::DenseMatrix;
use super::{BitMatrix, Gf2Error};

/// Rank over GF(2).
pub fn rank_gf2(m: &BitMatrix) -> usize {
    let mut d = DenseMatrix::from_sparse(m);
    let order: Vec<usize> = (0..m.cols()).collect();
    d.eliminate(&order, None).len()
}

/// Inverse over GF(2) of a square matrix.
pub fn invert_gf2(m: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    if m.rows() != m.cols() {
        return Err(Gf2Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut d = DenseMatrix::from_sparse(m);
    let mut inv = DenseMatrix::from_sparse(&BitMatrix::identity(n));
    let order: Vec<usize> = (0..n).collect();
    let pivots = d.eliminate(&order, Some(&mut inv));
    if pivots.len() < n {
        return Err(Gf2Error::SingularMatrix { rank: pivots.len(), dim: n });
    }
    Ok(inv.to_sparse())
}

/// Split of the columns of a parity-check matrix into a basis (pivot
/// columns) and the remaining free columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformationSet {
    /// Independent columns, in discovery order; `pivots.len()` is the rank.
    pub pivots: Vec<usize>,
    /// Columns outside the basis, ascending.
    pub free: Vec<usize>,
}

/// Greedy column basis, scanning columns in `order` (which must be a
/// permutation of `0..m.cols()`).
pub fn information_set(m: &BitMatrix, order: &[usize]) -> InformationSet {
    let mut d = DenseMatrix::from_sparse(m);
    let pivots = d.eliminate(order, None);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    InformationSet { pivots, free }
}

/// Solves `B · x = rhs` for each column of `rhs` given a square invertible
/// `B`; returns `B⁻¹ · rhs`.
pub fn solve_gf2(b: &BitMatrix, rhs: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    if b.rows() != b.cols() || rhs.rows() != b.rows() {
        return Err(Gf2Error::DimensionMismatch(format!(
            "solve needs square B and matching right-hand side, got {}x{} and {}x{}",
            b.rows(),
            b.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    let n = b.rows();
    let mut d = DenseMatrix::from_sparse(b);
    let mut r = DenseMatrix::from_sparse(rhs);
    let order: Vec<usize> = (0..n).collect();
    let pivots = d.eliminate(&order, Some(&mut r));
    if pivots.len() < n {
        return Err(Gf2Error::SingularMatrix { rank: pivots.len(), dim: n });
    }
    Ok(r.to_sparse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{assemble, BlockGrid, Cell};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, density: f64, rng: &mut ChaCha8Rng) -> BitMatrix {
        let edges: Vec<_> =
            (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).filter(|_| rng.random_bool(density)).collect();
        BitMatrix::from_edges(rows, cols, edges).unwrap()
    }

    /// Row reduction on `Vec<Vec<u8>>` written independently of the
    /// packed implementation.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut rows = m.to_dense_rows();
        let cols = m.cols();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && row[c] == 1 {
                        for (x, y) in row.iter_mut().zip(&pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_gf2(&BitMatrix::identity(8)), 8);
        let ones = BitMatrix::from_dense_rows(&vec![vec![1u8; 4]; 4]);
        assert_eq!(rank_gf2(&ones), 1);
        let hp = assemble(&BlockGrid::new(16, vec![vec![Cell::DualDiagonal]]).unwrap()).unwrap();
        assert_eq!(rank_gf2(&hp), 16);
    }

    #[test]
    fn rank_matches_naive_oracle_on_small_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let rows = rng.random_range(1..=12);
            let cols = rng.random_range(1..=12);
            let density = rng.random_range(0.05..0.9);
            let m = random_matrix(rows, cols, density, &mut rng);
            let r = rank_gf2(&m);
            assert_eq!(r, naive_rank(&m), "{:?}", m.to_dense_rows());
            assert!(r <= rows.min(cols));
        }
    }

    #[test]
    fn invert_examples() {
        assert!(invert_gf2(&BitMatrix::identity(5)).unwrap().is_identity());
        let dd = assemble(&BlockGrid::new(4, vec![vec![Cell::DualDiagonal]]).unwrap()).unwrap();
        let inv = invert_gf2(&dd).unwrap();
        // running XOR: lower-triangular all-ones
        let expected: Vec<Vec<u8>> = (0..4).map(|r| (0..4).map(|c| u8::from(c <= r)).collect()).collect();
        assert_eq!(inv.to_dense_rows(), expected);
    }

    #[test]
    fn invert_rejects_singular() {
        let ones = BitMatrix::from_dense_rows(&vec![vec![1u8; 3]; 3]);
        assert!(matches!(invert_gf2(&ones), Err(Gf2Error::SingularMatrix { rank: 1, dim: 3 })));
        assert!(matches!(invert_gf2(&BitMatrix::zeros(2, 3)), Err(Gf2Error::DimensionMismatch(_))));
    }

    #[test]
    fn random_full_rank_inverse_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(1..=64);
            let m = random_matrix(n, n, 0.3, &mut rng);
            if rank_gf2(&m) < n {
                continue;
            }
            let inv = invert_gf2(&m).unwrap();
            assert!(m.mul(&inv).is_identity());
            assert!(inv.mul(&m).is_identity());
            checked += 1;
        }
    }

    #[test]
    fn eight_by_eight_full_rank_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = loop {
            let m = random_matrix(8, 8, 0.5, &mut rng);
            if naive_rank(&m) == 8 {
                break m;
            }
        };
        assert!(m.mul(&invert_gf2(&m).unwrap()).is_identity());
    }

    #[test]
    fn information_set_prefers_scan_order() {
        // [I | I]: scanning the right half first makes it the basis.
        let wide = BitMatrix::from_edges(3, 6, (0..3).flat_map(|i| [(i, i), (i, i + 3)])).unwrap();
        let set = information_set(&wide, &[3, 4, 5, 0, 1, 2]);
        assert_eq!(set.pivots, vec![3, 4, 5]);
        assert_eq!(set.free, vec![0, 1, 2]);
    }

    #[test]
    fn solve_matches_inverse_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = loop {
            let b = random_matrix(10, 10, 0.4, &mut rng);
            if rank_gf2(&b) == 10 {
                break b;
            }
        };
        let rhs = random_matrix(10, 4, 0.5, &mut rng);
        assert_eq!(solve_gf2(&b, &rhs).unwrap(), invert_gf2(&b).unwrap().mul(&rhs));
    }
}
