use super::CodecError;
use crate::families::CodeDesign;

/// Encodes by solving the design's accumulator schedule row by row: each
/// pivot becomes the XOR of the other (already known) bits of its row.
pub fn encode_accumulator(d: &CodeDesign, u: &[u8]) -> Result<Vec<u8>, CodecError> {
    let schedule = match &d.accumulator_schedule {
        Some(s) if d.family.has_accumulator() => s,
        _ => return Err(CodecError::FamilyMismatch(d.family)),
    };
    if u.len() != d.k {
        return Err(CodecError::LengthMismatch { got: u.len(), want: d.k });
    }
    let mut c = vec![0u8; d.n];
    let mut known = vec![false; d.n];
    for (&col, &bit) in d.info_columns.iter().zip(u) {
        c[col] = bit & 1;
        known[col] = true;
    }
    for &(row, pivot) in schedule {
        let mut acc = 0u8;
        for &col in d.h.row(row) {
            if col == pivot {
                continue;
            }
            if !known[col] {
                return Err(CodecError::NonTriangular { row });
            }
            acc ^= c[col];
        }
        c[pivot] = acc;
        known[pivot] = true;
    }
    if let Some(col) = (0..d.n).find(|&c| !known[c]) {
        return Err(CodecError::NonTriangular { row: d.h.col(col).first().copied().unwrap_or(0) });
    }
    Ok(c)
}

/// Drops punctured positions, keeping transmission order.
pub fn puncture<T: Copy>(c: &[T], d: &CodeDesign) -> Vec<T> {
    d.block_of_column.iter().zip(c).filter(|(b, _)| b.is_some()).map(|(_, &x)| x).collect()
}

/// Reinserts punctured positions with LLR 0.
pub fn depuncture(received: &[f64], d: &CodeDesign) -> Result<Vec<f64>, CodecError> {
    let want = d.transmitted_len();
    if received.len() != want {
        return Err(CodecError::LengthMismatch { got: received.len(), want });
    }
    let mut it = received.iter();
    Ok(d.block_of_column.iter().map(|b| if b.is_some() { *it.next().expect("length checked") } else { 0.0 }).collect())
}
