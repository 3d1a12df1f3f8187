use super::CodecError;
use crate::families::CodeDesign;
use crate::gf2::{rank_gf2, solve_gf2, BitMatrix};

/// Systematic generator `G` (K × N) with identity on the information
/// columns, plus a bit-packed copy of `B⁻¹A` for encoding.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix {
    g: BitMatrix,
    n: usize,
    info_columns: Vec<usize>,
    parity_columns: Vec<usize>,
    /// Row i: coefficients of parity bit `parity_columns[i]` over the
    /// information bits, packed 64 per word.
    packed: Vec<u64>,
    stride: usize,
}

/// G = [(B⁻¹A)ᵀ | I_K] up to the column mapping of `d`.
pub fn derive_generator(d: &CodeDesign) -> Result<GeneratorMatrix, CodecError> {
    let m = d.m();
    let b = d.parity_part();
    let a = d.h.select_columns(&d.info_columns);
    if d.parity_columns.len() != m {
        return Err(CodecError::SingularParityPart { rank: rank_gf2(&b), m });
    }
    let p = solve_gf2(&b, &a).map_err(|_| CodecError::SingularParityPart { rank: rank_gf2(&b), m })?;
    let k = d.info_columns.len();
    let stride = k.div_ceil(64).max(1);
    let mut packed = vec![0u64; m * stride];
    let mut edges = Vec::with_capacity(k + p.nnz());
    for (j, &c) in d.info_columns.iter().enumerate() {
        edges.push((j, c));
    }
    for (i, j) in p.edges() {
        packed[i * stride + j / 64] |= 1 << (j % 64);
        edges.push((j, d.parity_columns[i]));
    }
    let g = BitMatrix::from_edges(k, d.n, edges).expect("info and parity columns are disjoint");
    Ok(GeneratorMatrix {
        g,
        n: d.n,
        info_columns: d.info_columns.clone(),
        parity_columns: d.parity_columns.clone(),
        packed,
        stride,
    })
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.info_columns.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Codeword with `u` on the information columns.
    pub fn encode(&self, u: &[u8]) -> Result<Vec<u8>, CodecError> {
        if u.len() != self.k() {
            return Err(CodecError::LengthMismatch { got: u.len(), want: self.k() });
        }
        let mut words = vec![0u64; self.stride];
        for (j, &bit) in u.iter().enumerate() {
            words[j / 64] |= u64::from(bit & 1) << (j % 64);
        }
        let mut c = vec![0u8; self.n];
        for (&col, &bit) in self.info_columns.iter().zip(u) {
            c[col] = bit & 1;
        }
        for (i, &col) in self.parity_columns.iter().enumerate() {
            let row = &self.packed[i * self.stride..(i + 1) * self.stride];
            let ones: u32 = row.iter().zip(&words).map(|(a, b)| (a & b).count_ones()).sum();
            c[col] = (ones & 1) as u8;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_random_root_f2, CodeDesign, Family};

    fn tiny(h: BitMatrix, info: Vec<usize>) -> CodeDesign {
        let n = h.cols();
        let parity = (0..n).filter(|c| !info.contains(c)).collect();
        CodeDesign {
            h,
            family: Family::Peg,
            n,
            k: info.len(),
            f: 1,
            block_of_column: vec![Some(0); n],
            info_columns: info,
            parity_columns: parity,
            punctured_columns: vec![],
            seed: 0,
            attempts: 1,
            qc_block_size: None,
            accumulator_schedule: None,
            null_regions: vec![],
        }
    }

    #[test]
    fn identity_parity_gives_repetition() {
        // H = [I | I]: parity columns 0..3, information 3..6
        let h = BitMatrix::from_edges(3, 6, (0..3).flat_map(|i| [(i, i), (i, i + 3)])).unwrap();
        let g = derive_generator(&tiny(h, vec![3, 4, 5])).unwrap();
        let want = BitMatrix::from_edges(3, 6, (0..3).flat_map(|i| [(i, i), (i, i + 3)])).unwrap();
        assert_eq!(g.matrix(), &want);
    }

    #[test]
    fn all_codewords_of_a_small_root_code_satisfy_h() {
        let d = build_random_root_f2(16, 1).unwrap();
        let g = derive_generator(&d).unwrap();
        assert_eq!(g.k(), 8);
        for mask in 0u32..256 {
            let u: Vec<u8> = (0..8).map(|j| (mask >> j & 1) as u8).collect();
            let c = g.encode(&u).unwrap();
            assert!(d.h.syndrome_is_zero(&c), "message {mask:08b}");
            let got: Vec<u8> = d.info_columns.iter().map(|&c0| c[c0]).collect();
            assert_eq!(got, u);
        }
        // H·Gᵀ = 0
        assert_eq!(d.h.mul(&g.matrix().transpose()).nnz(), 0);
    }

    #[test]
    fn unit_message_is_a_generator_row() {
        let d = build_random_root_f2(64, 2).unwrap();
        let g = derive_generator(&d).unwrap();
        let mut u = vec![0; g.k()];
        u[5] = 1;
        let c = g.encode(&u).unwrap();
        let row: Vec<u8> = g.matrix().to_dense_rows()[5].clone();
        assert_eq!(c, row);
        assert_eq!(g.encode(&vec![0; g.k()]).unwrap(), vec![0; 64]);
        assert!(g.encode(&[1]).is_err());
    }
}
