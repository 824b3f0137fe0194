//! MacKay's alist format.
//!
//! ```text
//! N M
//! max_column_weight max_row_weight
//! column weights (N values)
//! row weights (M values)
//! N lines: 1-based row indices of each column, padded with 0
//! M lines: 1-based column indices of each row, padded with 0
//! ```

use std::fmt::Write as _;

use super::{MatrixError, SparseBinaryMatrix};

fn join(values: impl Iterator<Item = usize>) -> String {
    let mut s = String::new();
    for (i, v) in values.enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

fn padded(list: &[usize], width: usize) -> String {
    join(
        list.iter()
            .map(|&x| x + 1)
            .chain(std::iter::repeat_n(0, width - list.len())),
    )
}

/// Serializes `m`; equal matrices give identical text.
pub fn write_alist(m: &SparseBinaryMatrix) -> String {
    let cw = m.column_weights();
    let rw = m.row_weights();
    let max_c = cw.iter().copied().max().unwrap_or(0);
    let max_r = rw.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.cols(), m.rows());
    let _ = writeln!(out, "{max_c} {max_r}");
    let _ = writeln!(out, "{}", join(cw.iter().copied()));
    let _ = writeln!(out, "{}", join(rw.iter().copied()));
    for c in 0..m.cols() {
        let _ = writeln!(out, "{}", padded(m.column(c), max_c));
    }
    for r in 0..m.rows() {
        let _ = writeln!(out, "{}", padded(m.row(r), max_r));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl Lines<'_> {
    fn next_numbers(&mut self, expected: Option<usize>) -> Result<Vec<usize>, MatrixError> {
        let (i, line) = self.inner.next().ok_or(MatrixError::Alist {
            line: self.last + 1,
            message: "unexpected end of file".into(),
        })?;
        self.last = i + 1;
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| MatrixError::Alist {
                    line: i + 1,
                    message: format!("bad integer {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(n) = expected {
            if nums.len() != n {
                return Err(MatrixError::Alist {
                    line: i + 1,
                    message: format!("expected {n} values, found {}", nums.len()),
                });
            }
        }
        Ok(nums)
    }
}

/// Parses an alist file; the row lists must mirror the column lists.
pub fn parse_alist(text: &str) -> Result<SparseBinaryMatrix, MatrixError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let dims = lines.next_numbers(Some(2))?;
    let (n, m) = (dims[0], dims[1]);
    let maxes = lines.next_numbers(Some(2))?;
    let cw = if n > 0 {
        lines.next_numbers(Some(n))?
    } else {
        lines.next_numbers(Some(0))?
    };
    let rw = if m > 0 {
        lines.next_numbers(Some(m))?
    } else {
        lines.next_numbers(Some(0))?
    };
    let bad = |line: usize, message: String| MatrixError::Alist { line, message };

    let mut columns = Vec::with_capacity(n);
    for (c, &w) in cw.iter().enumerate() {
        let nums = lines.next_numbers(None)?;
        let line = lines.last;
        let entries: Vec<usize> = nums.iter().copied().filter(|&x| x != 0).collect();
        if entries.len() != w || nums.len() < w || nums.len() > maxes[0].max(w) {
            return Err(bad(line, format!("column {} does not have weight {w}", c + 1)));
        }
        if let Some(&x) = entries.iter().find(|&&x| x > m) {
            return Err(bad(line, format!("row index {x} exceeds {m}")));
        }
        columns.push(entries.into_iter().map(|x| x - 1).collect::<Vec<_>>());
    }
    let matrix = SparseBinaryMatrix::from_columns(m, columns)?;
    for (r, &w) in rw.iter().enumerate() {
        let nums = lines.next_numbers(None)?;
        let line = lines.last;
        let mut entries: Vec<usize> = nums.iter().copied().filter(|&x| x != 0).map(|x| x - 1).collect();
        entries.sort_unstable();
        if entries.len() != w || entries.as_slice() != matrix.row(r) {
            return Err(bad(line, format!("row {} disagrees with the column lists", r + 1)));
        }
    }
    Ok(matrix)
}
