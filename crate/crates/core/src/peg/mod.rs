//! Progressive edge growth under per-column row masks.

mod construct;
mod qc;

pub use construct::{peg_construct, ColumnMasks, PegOptions};
pub use qc::{blocks_are_circulant, qc_peg_construct, QcPegParams};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PegError {
    #[error("no admissible check for column {column}")]
    NoCandidate { column: usize },
    #[error("dimensions {rows}x{cols} not divisible by block size {n}")]
    NonDivisibleDimensions { rows: usize, cols: usize, n: usize },
    #[error("mask length {got} differs from check count {want}")]
    MaskLength { got: usize, want: usize },
    #[error("degree sequence has {got} entries, expected {want}")]
    DegreeLength { got: usize, want: usize },
}

/// Rows a column (or column group) may connect to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorMask {
    allowed: Vec<bool>,
}

impl IndicatorMask {
    pub fn all(m: usize) -> Self {
        IndicatorMask { allowed: vec![true; m] }
    }

    pub fn none(m: usize) -> Self {
        IndicatorMask { allowed: vec![false; m] }
    }

    pub fn from_bools(allowed: Vec<bool>) -> Self {
        IndicatorMask { allowed }
    }

    /// Mask allowing whole row blocks of height `n`.
    pub fn from_row_blocks(m: usize, n: usize, blocks: &[usize]) -> Self {
        let mut mask = Self::none(m);
        for &b in blocks {
            mask.set_range(b * n, (b + 1) * n, true);
        }
        mask
    }

    /// Mask allowing the row range `[start, end)`.
    pub fn from_range(m: usize, start: usize, end: usize) -> Self {
        let mut mask = Self::none(m);
        mask.set_range(start, end, true);
        mask
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn allows(&self, r: usize) -> bool {
        self.allowed[r]
    }

    pub fn count(&self) -> usize {
        self.allowed.iter().filter(|&&a| a).count()
    }

    pub fn set_range(&mut self, start: usize, end: usize, value: bool) {
        self.allowed[start..end].fill(value);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.allowed
    }
}

/// Target number of new edges per column (or per column group in QC mode).
/// Zero means the column is left as initialised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn uniform(len: usize, weight: usize) -> Self {
        DegreeSequence(vec![weight; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Graph under construction plus the random stream used for tie-breaks.
#[derive(Clone, Debug)]
pub struct PlacementState {
    graph: BitMatrix,
    check_weights: Vec<usize>,
    rng: ChaCha8Rng,
}

impl PlacementState {
    pub fn new(init: BitMatrix, seed: u64) -> Self {
        let check_weights = (0..init.rows()).map(|r| init.row_weight(r)).collect();
        PlacementState { graph: init, check_weights, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn graph(&self) -> &BitMatrix {
        &self.graph
    }

    pub fn check_weights(&self) -> &[usize] {
        &self.check_weights
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Adds edge `(r, c)`; returns false if it already existed.
    pub fn add_edge(&mut self, r: usize, c: usize) -> bool {
        let added = self.graph.insert(r, c);
        if added {
            self.check_weights[r] += 1;
        }
        added
    }

    pub fn into_graph(self) -> BitMatrix {
        self.graph
    }
}

/// Checks reached from a variable node, level by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    /// `reached[r]` is true when check `r` lies in the tree.
    pub reached: Vec<bool>,
    /// Checks first reached at each level; level 0 holds the direct neighbours.
    pub levels: Vec<Vec<usize>>,
    /// Number of expansions performed after level 0.
    pub depth: usize,
}

impl Subtree {
    pub fn reached_checks(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.levels.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Tree with its deepest level removed.
    pub fn without_last_level(&self) -> Subtree {
        let mut t = self.clone();
        if let Some(last) = t.levels.pop() {
            for r in last {
                t.reached[r] = false;
            }
            t.depth = t.depth.saturating_sub(1);
        }
        t
    }
}

fn covers_allowed(reached: &[bool], mask: &IndicatorMask) -> bool {
    mask.as_slice().iter().zip(reached).all(|(&a, &r)| !a || r)
}

/// Breadth-first expansion from `v` through the whole graph. Expansion
/// stops once every check allowed by `mask` is in the tree, when a level
/// adds nothing, or at depth `2·cols`.
pub fn expand_subtree(state: &PlacementState, v: usize, mask: &IndicatorMask) -> Subtree {
    let g = &state.graph;
    let mut reached = vec![false; g.rows()];
    let mut seen_var = vec![false; g.cols()];
    seen_var[v] = true;
    let first: Vec<usize> = g.col(v).to_vec();
    if first.is_empty() {
        return Subtree { reached, levels: Vec::new(), depth: 0 };
    }
    for &r in &first {
        reached[r] = true;
    }
    let mut levels = vec![first];
    let mut depth = 0;
    let cap = 2 * g.cols();
    while depth < cap && !covers_allowed(&reached, mask) {
        let mut next = Vec::new();
        for &r in levels.last().unwrap() {
            for &u in g.row(r) {
                if seen_var[u] {
                    continue;
                }
                seen_var[u] = true;
                for &r2 in g.col(u) {
                    if !reached[r2] {
                        reached[r2] = true;
                        next.push(r2);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
        depth += 1;
    }
    Subtree { reached, levels, depth }
}

/// Uniform pick among the minimum-weight checks that are allowed and not
/// yet reached.
pub fn select_check(
    state: &mut PlacementState,
    reached: &[bool],
    mask: &IndicatorMask,
    column: usize,
) -> Result<usize, PegError> {
    let mut best = usize::MAX;
    let mut ties: Vec<usize> = Vec::new();
    for (r, (&a, &seen)) in mask.as_slice().iter().zip(reached).enumerate() {
        if !a || seen {
            continue;
        }
        let w = state.check_weights[r];
        if w < best {
            best = w;
            ties.clear();
        }
        if w == best {
            ties.push(r);
        }
    }
    ties.choose(&mut state.rng).copied().ok_or(PegError::NoCandidate { column })
}

/// Picks a check for a new edge on `v`: candidates come from the deepest
/// tree that still leaves an allowed check outside it.
pub(crate) fn place_one(state: &mut PlacementState, v: usize, mask: &IndicatorMask) -> Result<usize, PegError> {
    let tree = expand_subtree(state, v, mask);
    let tree =
        if tree.levels.len() > 1 && covers_allowed(&tree.reached, mask) { tree.without_last_level() } else { tree };
    select_check(state, &tree.reached, mask, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn state_from(rows: usize, cols: usize, edges: &[(usize, usize)]) -> PlacementState {
        PlacementState::new(BitMatrix::from_edges(rows, cols, edges.iter().copied()).unwrap(), 1)
    }

    #[test]
    fn fresh_node_reaches_nothing() {
        let s = state_from(4, 4, &[]);
        let t = expand_subtree(&s, 0, &IndicatorMask::all(4));
        assert!(t.reached_checks().is_empty());
        assert_eq!(t.depth, 0);
    }

    #[test]
    fn two_hop_chain() {
        // v0 - c0 - v1 - c1
        let s = state_from(3, 2, &[(0, 0), (0, 1), (1, 1)]);
        let t = expand_subtree(&s, 0, &IndicatorMask::all(3));
        assert_eq!(t.reached_checks(), vec![0, 1]);
        assert_eq!(t.depth, 1);
    }

    #[test]
    fn stops_once_allowed_checks_are_covered() {
        let s = state_from(4, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]);
        let mut mask = IndicatorMask::none(4);
        mask.set_range(0, 2, true);
        let t = expand_subtree(&s, 0, &mask);
        assert_eq!(t.reached_checks(), vec![0, 1]);
        let t = expand_subtree(&s, 0, &IndicatorMask::all(4));
        assert_eq!(t.reached_checks(), vec![0, 1, 2]);
    }

    /// Plain BFS over an explicit adjacency list, level by level.
    fn oracle_levels(g: &BitMatrix, v: usize) -> Vec<BTreeSet<usize>> {
        let mut seen_c = BTreeSet::new();
        let mut seen_v = BTreeSet::from([v]);
        let mut frontier: BTreeSet<usize> = g.col(v).iter().copied().collect();
        let mut out = Vec::new();
        while !frontier.is_empty() {
            seen_c.extend(frontier.iter().copied());
            out.push(seen_c.clone());
            let vars: BTreeSet<usize> =
                frontier.iter().flat_map(|&c| g.row(c).iter().copied()).filter(|u| !seen_v.contains(u)).collect();
            seen_v.extend(vars.iter().copied());
            frontier = vars.iter().flat_map(|&u| g.col(u).iter().copied()).filter(|c| !seen_c.contains(c)).collect();
        }
        out
    }

    #[test]
    fn reach_matches_bfs_oracle_at_every_depth() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let rows = rng.random_range(2..10);
            let cols = rng.random_range(2..14);
            let edges: Vec<_> =
                (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).filter(|_| rng.random_bool(0.2)).collect();
            let s = state_from(rows, cols, &edges);
            for v in 0..cols {
                let oracle = oracle_levels(s.graph(), v);
                let t = expand_subtree(&s, v, &IndicatorMask::all(rows));
                let mut acc = BTreeSet::new();
                for (d, level) in t.levels.iter().enumerate() {
                    acc.extend(level.iter().copied());
                    assert_eq!(acc, oracle[d]);
                }
                // expansion only stops early when every check is covered
                if t.levels.len() < oracle.len() {
                    assert_eq!(acc.len(), rows);
                }
            }
        }
    }

    #[test]
    fn single_candidate_and_unique_minimum() {
        let mut s = state_from(3, 3, &[(1, 1), (1, 2), (2, 2)]);
        let reached = vec![true, false, true];
        assert_eq!(select_check(&mut s, &reached, &IndicatorMask::all(3), 0), Ok(1));
        // weights: row1 = 2, row2 = 1
        let reached = vec![true, false, false];
        assert_eq!(select_check(&mut s, &reached, &IndicatorMask::all(3), 0), Ok(2));
        let reached = vec![true, true, true];
        assert_eq!(select_check(&mut s, &reached, &IndicatorMask::all(3), 0), Err(PegError::NoCandidate { column: 0 }));
    }

    #[test]
    fn equal_weight_ties_are_uniform() {
        let k = 4;
        let draws = 10_000;
        let mut s = state_from(k, 1, &[]);
        let mut counts = vec![0usize; k];
        for _ in 0..draws {
            let r = select_check(&mut s, &vec![false; k], &IndicatorMask::all(k), 0).unwrap();
            counts[r] += 1;
        }
        let p = 1.0 / k as f64;
        let mean = draws as f64 * p;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - mean).abs() < 3.0 * sigma, "{c} vs {mean}±{sigma}");
        }
    }
}
