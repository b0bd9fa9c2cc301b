//! Reading and writing parity-check matrices in alist format.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(indices: &[usize], width: usize) -> String {
    join(
        indices
            .iter()
            .map(|&i| i + 1)
            .chain(std::iter::repeat(0))
            .take(width),
    )
}

pub fn to_alist(h: &BitMatrix) -> String {
    let (m, n) = h.shape();
    let cols: Vec<Vec<usize>> = (0..n).map(|j| h.column(j).support()).collect();
    let rows: Vec<Vec<usize>> = h.rows().iter().map(|r| r.support()).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    writeln!(out, "{n} {m}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(rows.iter().map(Vec::len))).unwrap();
    for c in &cols {
        writeln!(out, "{}", padded(c, max_col)).unwrap();
    }
    for r in &rows {
        writeln!(out, "{}", padded(r, max_row)).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl Lines<'_> {
    /// Next non-blank line as integers, with its 1-based line number.
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (i, line) in self.inner.by_ref() {
            if line.trim().is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Alist {
                        line: i + 1,
                        msg: format!("not a non-negative integer: {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((i + 1, nums));
        }
        Err(Error::Alist {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }

    fn expect_len(&mut self, what: &str, len: usize) -> Result<(usize, Vec<usize>)> {
        // an empty list is written as a blank line, which the reader skips
        if len == 0 {
            return Ok((0, Vec::new()));
        }
        let (line, nums) = self.next_numbers(what)?;
        if nums.len() != len {
            return Err(Error::Alist {
                line,
                msg: format!("{what}: expected {len} values, found {}", nums.len()),
            });
        }
        Ok((line, nums))
    }
}

/// Parses alist text. The row and column sections must describe the same matrix.
pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (_, dims) = lines.expect_len("dimensions", 2)?;
    let (n, m) = (dims[0], dims[1]);
    let (_, max_deg) = lines.expect_len("maximum degrees", 2)?;
    let (_, col_deg) = lines.expect_len("column degrees", n)?;
    let (_, row_deg) = lines.expect_len("row degrees", m)?;

    let mut by_cols = BitMatrix::zeros(m, n);
    for (j, &deg) in col_deg.iter().enumerate() {
        let (line, idx) = lines.expect_len("column entries", max_deg[0])?;
        let entries = read_entries(line, &idx, deg, m)?;
        for i in entries {
            by_cols.set(i, j, true);
        }
    }

    let mut rows = Vec::with_capacity(m);
    for &deg in &row_deg {
        let (line, idx) = lines.expect_len("row entries", max_deg[1])?;
        rows.push(BitVector::from_indices(
            n,
            &read_entries(line, &idx, deg, n)?,
        ));
    }
    let by_rows = BitMatrix::from_rows(n, rows)?;
    if by_rows != by_cols {
        return Err(Error::Alist {
            line: 0,
            msg: "row and column sections disagree".into(),
        });
    }
    Ok(by_rows)
}

fn read_entries(line: usize, idx: &[usize], degree: usize, bound: usize) -> Result<Vec<usize>> {
    let err = |msg: String| Error::Alist { line, msg };
    if idx.len() < degree {
        return Err(err(format!("degree {degree} exceeds the maximum degree")));
    }
    let (used, pad) = idx.split_at(degree);
    if pad.iter().any(|&v| v != 0) {
        return Err(err("nonzero entry beyond the stated degree".into()));
    }
    let mut out = Vec::with_capacity(degree);
    for &v in used {
        if v == 0 || v > bound {
            return Err(err(format!("index {v} outside 1..={bound}")));
        }
        if out.contains(&(v - 1)) {
            return Err(err(format!("repeated index {v}")));
        }
        out.push(v - 1);
    }
    Ok(out)
}
