//! `key = value` sidecar describing a design stored as alist.
//!
//! ```text
//! family = qc-root
//! n = 900
//! k = 300
//! f = 3
//! seed = 7
//! attempts = 1
//! qc_block_size = 100
//! info_columns = 0-99,300-399,600-699
//! punctured_columns =
//! block.1 = 0-299
//! block.2 = 300-599
//! block.3 = 600-899
//! ```
//!
//! Column lists are comma-separated 0-based inclusive ranges.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{CodeDesign, Family};
use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DescriptorError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing key {0}")]
    Missing(String),
    #[error("inconsistent descriptor: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub f: usize,
    pub seed: u64,
    pub attempts: u32,
    pub qc_block_size: Option<usize>,
    pub info_columns: Vec<usize>,
    pub punctured_columns: Vec<usize>,
    pub block_of_column: Vec<Option<usize>>,
}

impl Descriptor {
    pub fn of(d: &CodeDesign) -> Self {
        Descriptor {
            family: d.family,
            n: d.n,
            k: d.k,
            f: d.f,
            seed: d.seed,
            attempts: d.attempts,
            qc_block_size: d.qc_block_size,
            info_columns: d.info_columns.clone(),
            punctured_columns: d.punctured_columns.clone(),
            block_of_column: d.block_of_column.clone(),
        }
    }

    /// Rebuilds a design around `h`. Accumulator schedules and null
    /// regions are not stored and come back empty.
    pub fn into_design(self, h: BitMatrix) -> Result<CodeDesign, DescriptorError> {
        if h.cols() != self.n {
            return Err(DescriptorError::Inconsistent(format!(
                "matrix has {} columns, descriptor says n = {}",
                h.cols(),
                self.n
            )));
        }
        let parity_columns = (0..self.n).filter(|c| self.info_columns.binary_search(c).is_err()).collect();
        Ok(CodeDesign {
            h,
            family: self.family,
            n: self.n,
            k: self.k,
            f: self.f,
            block_of_column: self.block_of_column,
            info_columns: self.info_columns,
            parity_columns,
            punctured_columns: self.punctured_columns,
            seed: self.seed,
            attempts: self.attempts,
            qc_block_size: self.qc_block_size,
            accumulator_schedule: None,
            null_regions: Vec::new(),
        })
    }
}

fn ranges(cols: &[usize]) -> String {
    let mut out = Vec::new();
    let mut i = 0;
    while i < cols.len() {
        let mut j = i;
        while j + 1 < cols.len() && cols[j + 1] == cols[j] + 1 {
            j += 1;
        }
        out.push(if i == j { cols[i].to_string() } else { format!("{}-{}", cols[i], cols[j]) });
        i = j + 1;
    }
    out.join(",")
}

fn parse_ranges(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let a: usize = a.parse().map_err(|_| format!("bad index {a:?}"))?;
        let b: usize = b.parse().map_err(|_| format!("bad index {b:?}"))?;
        if b < a {
            return Err(format!("empty range {part:?}"));
        }
        out.extend(a..=b);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn write_descriptor(d: &CodeDesign) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family = {}", d.family);
    let _ = writeln!(s, "n = {}", d.n);
    let _ = writeln!(s, "k = {}", d.k);
    let _ = writeln!(s, "f = {}", d.f);
    let _ = writeln!(s, "rate = {}/{}", d.k, d.transmitted_len());
    let _ = writeln!(s, "seed = {}", d.seed);
    let _ = writeln!(s, "attempts = {}", d.attempts);
    if let Some(z) = d.qc_block_size {
        let _ = writeln!(s, "qc_block_size = {z}");
    }
    let _ = writeln!(s, "info_columns = {}", ranges(&d.info_columns));
    let _ = writeln!(s, "punctured_columns = {}", ranges(&d.punctured_columns));
    for b in 0..d.f {
        let _ = writeln!(s, "block.{} = {}", b + 1, ranges(&d.block_columns(b)));
    }
    s
}

pub fn parse_descriptor(text: &str) -> Result<Descriptor, DescriptorError> {
    let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| DescriptorError::Parse {
            line: i + 1,
            msg: format!("expected key = value, got {line:?}"),
        })?;
        kv.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
    }
    let get = |key: &str| kv.get(key).ok_or_else(|| DescriptorError::Missing(key.into()));
    fn num<T: std::str::FromStr>((line, v): &(usize, String)) -> Result<T, DescriptorError> {
        v.parse().map_err(|_| DescriptorError::Parse { line: *line, msg: format!("bad number {v:?}") })
    }
    let list = |(line, v): &(usize, String)| parse_ranges(v).map_err(|msg| DescriptorError::Parse { line: *line, msg });
    let (fl, fv) = get("family")?;
    let family: Family = fv.parse().map_err(|msg| DescriptorError::Parse { line: *fl, msg })?;
    let n: usize = num(get("n")?)?;
    let k: usize = num(get("k")?)?;
    let f: usize = num(get("f")?)?;
    let seed: u64 = kv.get("seed").map(num).transpose()?.unwrap_or(0);
    let attempts: u32 = kv.get("attempts").map(num).transpose()?.unwrap_or(1);
    let qc_block_size = kv.get("qc_block_size").map(num).transpose()?;
    let info_columns = list(get("info_columns")?)?;
    let punctured_columns = kv.get("punctured_columns").map(list).transpose()?.unwrap_or_default();
    let mut block_of_column = vec![None; n];
    for b in 0..f {
        for c in list(get(&format!("block.{}", b + 1))?)? {
            let slot = block_of_column
                .get_mut(c)
                .ok_or_else(|| DescriptorError::Inconsistent(format!("column {c} outside n = {n}")))?;
            if slot.is_some() {
                return Err(DescriptorError::Inconsistent(format!("column {c} in two blocks")));
            }
            *slot = Some(b);
        }
    }
    if info_columns.len() != k || info_columns.iter().any(|&c| c >= n) {
        return Err(DescriptorError::Inconsistent("info_columns do not match k and n".into()));
    }
    for c in 0..n {
        let punctured = punctured_columns.binary_search(&c).is_ok();
        if punctured == block_of_column[c].is_some() {
            return Err(DescriptorError::Inconsistent(format!(
                "column {c} must be either punctured or in exactly one block"
            )));
        }
    }
    Ok(Descriptor { family, n, k, f, seed, attempts, qc_block_size, info_columns, punctured_columns, block_of_column })
}
