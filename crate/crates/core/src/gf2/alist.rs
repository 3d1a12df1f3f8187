use std::fmt::Write as _;

use super::{BitMatrix, Gf2Error};

/// Renders `m` in alist form. Index lists are 1-based and padded with
/// zeros up to the maximum weight.
pub fn alist_write(m: &BitMatrix) -> String {
    let (n, rows) = (m.cols(), m.rows());
    let max_col = (0..n).map(|c| m.col_weight(c)).max().unwrap_or(0);
    let max_row = (0..rows).map(|r| m.row_weight(r)).max().unwrap_or(0);
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{n} {rows}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut (0..n).map(|c| m.col_weight(c)))).unwrap();
    writeln!(out, "{}", join(&mut (0..rows).map(|r| m.row_weight(r)))).unwrap();
    for c in 0..n {
        let adj = m.col(c);
        let mut it = adj.iter().map(|r| r + 1).chain(std::iter::repeat_n(0, max_col - adj.len()));
        writeln!(out, "{}", join(&mut it)).unwrap();
    }
    for r in 0..rows {
        let adj = m.row(r);
        let mut it = adj.iter().map(|c| c + 1).chain(std::iter::repeat_n(0, max_row - adj.len()));
        writeln!(out, "{}", join(&mut it)).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl Lines<'_> {
    /// Next non-blank line as integers, with its 1-based line number.
    fn next_ints(&mut self) -> Result<(usize, Vec<usize>), Gf2Error> {
        for (i, line) in self.inner.by_ref() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let ints = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Gf2Error::ParseError {
                        line: line_no,
                        msg: format!("not a non-negative integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((line_no, ints));
        }
        Err(Gf2Error::ParseError { line: 0, msg: "unexpected end of input".into() })
    }
}

fn expect_len(line: usize, got: &[usize], want: usize, what: &str) -> Result<(), Gf2Error> {
    if got.len() != want {
        return Err(Gf2Error::ParseError { line, msg: format!("{what}: expected {want} values, found {}", got.len()) });
    }
    Ok(())
}

/// Parses alist text. Zero entries in index lists are padding and ignored.
/// The row lists must describe the same edge set as the column lists.
pub fn alist_read(text: &str) -> Result<BitMatrix, Gf2Error> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (l, dims) = lines.next_ints()?;
    expect_len(l, &dims, 2, "dimensions")?;
    let (n, rows) = (dims[0], dims[1]);
    let (l, maxes) = lines.next_ints()?;
    expect_len(l, &maxes, 2, "maximum weights")?;
    let (l, col_w) = lines.next_ints()?;
    expect_len(l, &col_w, n, "column weights")?;
    let (l, row_w) = lines.next_ints()?;
    expect_len(l, &row_w, rows, "row weights")?;

    if col_w.iter().any(|&w| w > maxes[0]) || row_w.iter().any(|&w| w > maxes[1]) {
        return Err(Gf2Error::ParseError { line: l, msg: "weight above the stated maximum".into() });
    }
    // with a zero maximum weight every list line is blank
    let mut col_edges = Vec::new();
    for (c, &want) in col_w.iter().enumerate().filter(|_| maxes[0] > 0) {
        let (l, list) = lines.next_ints()?;
        let idx: Vec<usize> = list.into_iter().filter(|&x| x != 0).collect();
        expect_len(l, &idx, want, &format!("column {}", c + 1))?;
        for r in idx {
            if r > rows {
                return Err(Gf2Error::ParseError { line: l, msg: format!("row index {r} exceeds {rows}") });
            }
            col_edges.push((r - 1, c));
        }
    }
    let mut row_edges = Vec::new();
    for (r, &want) in row_w.iter().enumerate().filter(|_| maxes[1] > 0) {
        let (l, list) = lines.next_ints()?;
        let idx: Vec<usize> = list.into_iter().filter(|&x| x != 0).collect();
        expect_len(l, &idx, want, &format!("row {}", r + 1))?;
        for c in idx {
            if c > n {
                return Err(Gf2Error::ParseError { line: l, msg: format!("column index {c} exceeds {n}") });
            }
            row_edges.push((r, c - 1));
        }
    }
    let m = BitMatrix::from_edges(rows, n, col_edges)?;
    let check = BitMatrix::from_edges(rows, n, row_edges)?;
    if m != check {
        return Err(Gf2Error::DimensionMismatch("row lists and column lists describe different matrices".into()));
    }
    Ok(m)
}
