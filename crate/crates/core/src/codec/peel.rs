use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOutcome {
    /// Pass in which each bit became known: `Some(0)` if never erased,
    /// `None` if still erased at the end.
    pub resolved_at: Vec<Option<usize>>,
    /// Passes that resolved at least one bit.
    pub passes: usize,
}

impl PeelOutcome {
    pub fn is_resolved(&self, col: usize) -> bool {
        self.resolved_at[col].is_some()
    }

    /// Columns still erased; they form a stopping set.
    pub fn residual(&self) -> Vec<usize> {
        (0..self.resolved_at.len()).filter(|&c| self.resolved_at[c].is_none()).collect()
    }
}

/// Flooding peeling on the erasure channel: in each pass every check with
/// exactly one erased neighbour (as of the start of the pass) resolves it.
pub fn bec_peel(h: &BitMatrix, erased: &[bool]) -> PeelOutcome {
    assert_eq!(erased.len(), h.cols(), "erasure pattern length must equal N");
    let mut resolved_at: Vec<Option<usize>> = erased.iter().map(|&e| if e { None } else { Some(0) }).collect();
    let mut unknown: Vec<usize> = (0..h.rows()).map(|r| h.row(r).iter().filter(|&&c| erased[c]).count()).collect();
    let mut passes = 0;
    loop {
        let mut newly = Vec::new();
        for r in 0..h.rows() {
            if unknown[r] == 1 {
                let c = *h.row(r).iter().find(|&&c| resolved_at[c].is_none()).expect("one unknown");
                newly.push(c);
            }
        }
        newly.sort_unstable();
        newly.dedup();
        if newly.is_empty() {
            break;
        }
        passes += 1;
        for &c in &newly {
            resolved_at[c] = Some(passes);
            for &r in h.col(c) {
                unknown[r] -= 1;
            }
        }
    }
    PeelOutcome { resolved_at, passes }
}
