use serde::Serialize;

use super::CodeDesign;
use crate::gf2::rank_gf2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Information column with fewer than F − 1 root checks.
    RootCheck {
        column: usize,
        roots: usize,
    },
    ParityRank {
        rank: usize,
        m: usize,
    },
    NotCirculant {
        row_block: usize,
        col_block: usize,
    },
    NullRegion {
        row: usize,
        col: usize,
    },
    BlockSize {
        block: usize,
        size: usize,
        want: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Per entry of `info_columns`.
    pub root_check_ok: Vec<bool>,
    pub parity_rank: usize,
    pub qc_blocks_ok: bool,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks of a c adjacent to `v` whose other neighbours are all
/// transmitted and outside `v`'s fading block.
pub fn root_checks(d: &CodeDesign, v: usize) -> usize {
    let Some(own) = d.block_of_column[v] else { return 0 };
    d.h.col(v)
        .iter()
        .filter(|&&c| d.h.row(c).iter().all(|&u| u == v || matches!(d.block_of_column[u], Some(b) if b != own)))
        .count()
}

/// Runs every structural check and collects all violations. Root checks
/// are enforced only for root families; the flags are reported for all.
pub fn validate_structure(d: &CodeDesign) -> StructureReport {
    let mut violations = Vec::new();
    let need = d.f.saturating_sub(1);
    let root_check_ok: Vec<bool> = d
        .info_columns
        .iter()
        .map(|&v| {
            let roots = root_checks(d, v);
            if d.family.is_root() && roots < need {
                violations.push(Violation::RootCheck { column: v, roots });
            }
            roots >= need
        })
        .collect();

    let m = d.m();
    let parity_rank = rank_gf2(&d.parity_part());
    if parity_rank != m || d.parity_columns.len() != m {
        violations.push(Violation::ParityRank { rank: parity_rank, m });
    }

    let mut qc_blocks_ok = true;
    if let Some(z) = d.qc_block_size {
        let mut bad: Vec<(usize, usize)> =
            d.h.edges()
                .filter(|&(r, c)| {
                    let (br, bc) = (r / z * z, c / z * z);
                    !d.h.contains(br + (r - br + 1) % z, bc + (c - bc + 1) % z)
                })
                .map(|(r, c)| (r / z, c / z))
                .collect();
        bad.sort_unstable();
        bad.dedup();
        qc_blocks_ok = bad.is_empty();
        violations
            .extend(bad.into_iter().map(|(row_block, col_block)| Violation::NotCirculant { row_block, col_block }));
    }

    for region in &d.null_regions {
        for row in region.rows.clone() {
            for &col in d.h.row(row) {
                if region.cols.binary_search(&col).is_ok() {
                    violations.push(Violation::NullRegion { row, col });
                }
            }
        }
    }

    let want = d.transmitted_len() / d.f.max(1);
    for block in 0..d.f {
        let size = d.block_of_column.iter().filter(|&&b| b == Some(block)).count();
        if size != want {
            violations.push(Violation::BlockSize { block, size, want });
        }
    }

    StructureReport { root_check_ok, parity_rank, qc_blocks_ok, violations }
}
