use super::{place_one, DegreeSequence, IndicatorMask, PegError, PlacementState};
use crate::gf2::BitMatrix;

/// Mask assignment: column `c` uses `masks[of_column[c]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnMasks {
    pub masks: Vec<IndicatorMask>,
    pub of_column: Vec<usize>,
}

impl ColumnMasks {
    pub fn uniform(mask: IndicatorMask, cols: usize) -> Self {
        ColumnMasks { masks: vec![mask], of_column: vec![0; cols] }
    }

    /// Masks assigned to consecutive column ranges of equal width.
    pub fn by_group(masks: Vec<IndicatorMask>, group_width: usize) -> Self {
        let of_column = (0..masks.len() * group_width).map(|c| c / group_width).collect();
        ColumnMasks { masks, of_column }
    }

    pub fn mask(&self, column: usize) -> &IndicatorMask {
        &self.masks[self.of_column[column]]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PegOptions {
    /// After each placement in row `r`, clear the column's mask over the
    /// aligned row segment of this height containing `r`.
    pub exclusive_segment: Option<usize>,
}

/// Adds `ds[c]` edges to every column `c` of `init`, lowest target degree
/// first, each edge chosen by [`place_one`] under the column's mask.
pub fn peg_construct(
    init: &BitMatrix,
    ds: &DegreeSequence,
    masks: &ColumnMasks,
    opts: &PegOptions,
    seed: u64,
) -> Result<BitMatrix, PegError> {
    let (m, n) = (init.rows(), init.cols());
    if ds.len() != n {
        return Err(PegError::DegreeLength { got: ds.len(), want: n });
    }
    if masks.of_column.len() != n {
        return Err(PegError::DegreeLength { got: masks.of_column.len(), want: n });
    }
    if let Some(bad) = masks.masks.iter().find(|k| k.len() != m) {
        return Err(PegError::MaskLength { got: bad.len(), want: m });
    }
    let mut order: Vec<usize> = (0..n).filter(|&c| ds.0[c] > 0).collect();
    order.sort_by_key(|&c| (init.col_weight(c) + ds.0[c], c));

    let mut state = PlacementState::new(init.clone(), seed);
    for c in order {
        let mut mask = masks.mask(c).clone();
        for _ in 0..ds.0[c] {
            let r = place_one(&mut state, c, &mask)?;
            state.add_edge(r, c);
            if let Some(seg) = opts.exclusive_segment {
                let start = r - r % seg;
                mask.set_range(start, (start + seg).min(m), false);
            }
        }
    }
    Ok(state.into_graph())
}
