//! Sparse GF(2) matrices: incidence matrices, rank, girth, regularity,
//! quasi-cyclic layout, minimum distance and alist I/O.

mod alist;
mod bits;
mod distance;
mod girth;
mod qc;

use std::fmt;

use thiserror::Error;

use crate::designs::Design;

pub use alist::{parse_alist, write_alist};
pub use bits::{rank_gf2, BitMatrix, Echelon};
pub use distance::{min_distance, MinDistance, EXHAUSTIVE_MAX_K};
pub use girth::{girth, girth_with_witness, GirthReport, TannerNode};
pub use qc::{qc_layout, QcBlockColumn, QcLayout};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry ({row}, {col}) outside a {rows} x {cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not quasi-cyclic: block column {block} is not a stack of circulants")]
    NotQuasiCyclic { block: usize },
    #[error("code dimension {k} exceeds the exhaustive bound {max} and no weight cap was given")]
    TooLarge { k: usize, max: usize },
    #[error("alist line {line}: {message}")]
    Alist { line: usize, message: String },
}

/// Binary matrix stored as sorted row indices per column, mirrored by sorted
/// column indices per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    col_idx: Vec<Vec<usize>>,
    row_idx: Vec<Vec<usize>>,
}

impl SparseBinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            col_idx: vec![Vec::new(); cols],
            row_idx: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|i| vec![i]).collect()).expect("identity")
    }

    /// Builds from per-column row lists; lists need not be sorted.
    pub fn from_columns(rows: usize, columns: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        let cols = columns.len();
        let mut col_idx = columns;
        let mut row_idx = vec![Vec::new(); rows];
        for (c, list) in col_idx.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(MatrixError::DuplicateEntry { row: w[0], col: c });
                }
            }
            for &r in list.iter() {
                if r >= rows {
                    return Err(MatrixError::OutOfBounds {
                        row: r,
                        col: c,
                        rows,
                        cols,
                    });
                }
                row_idx[r].push(c);
            }
        }
        Ok(Self {
            rows,
            cols,
            col_idx,
            row_idx,
        })
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MatrixError> {
        let mut columns = vec![Vec::new(); cols];
        for (r, c) in entries {
            if c >= cols {
                return Err(MatrixError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            columns[c].push(r);
        }
        Self::from_columns(rows, columns)
    }

    /// Builds from dense 0/1 rows.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::DimensionMismatch("ragged dense rows".into()));
        }
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &b)| b != 0).map(move |(j, _)| (i, j)));
        Self::from_entries(rows.len(), cols, entries)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn column(&self, c: usize) -> &[usize] {
        &self.col_idx[c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_idx[r]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.col_idx
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.col_idx[c].binary_search(&r).is_ok()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.col_idx
            .iter()
            .enumerate()
            .flat_map(|(c, list)| list.iter().map(move |&r| (r, c)))
    }

    pub fn column_weights(&self) -> Vec<usize> {
        self.col_idx.iter().map(Vec::len).collect()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_idx.iter().map(Vec::len).collect()
    }

    /// Whether the row and column indices describe the same entries.
    pub fn mirrors_agree(&self) -> bool {
        let mut rebuilt = vec![Vec::new(); self.rows];
        for (c, list) in self.col_idx.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &r in list {
                if r >= self.rows {
                    return false;
                }
                rebuilt[r].push(c);
            }
        }
        rebuilt == self.row_idx
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut cols = self.col_idx.clone();
        cols.extend(other.col_idx.iter().cloned());
        Self::from_columns(self.rows, cols)
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_columns(self.rows, self.col_idx[range].to_vec()).expect("sub-matrix")
    }

    /// Columns in the given order.
    pub fn select_columns(&self, order: &[usize]) -> Self {
        Self::from_columns(self.rows, order.iter().map(|&c| self.col_idx[c].clone()).collect()).expect("selection")
    }

    /// Moves old row `r` to row `new_of_old[r]`.
    pub fn permute_rows(&self, new_of_old: &[usize]) -> Result<Self, MatrixError> {
        if new_of_old.len() != self.rows {
            return Err(MatrixError::DimensionMismatch("row permutation length".into()));
        }
        let mut seen = vec![false; self.rows];
        for &n in new_of_old {
            if n >= self.rows || std::mem::replace(&mut seen[n], true) {
                return Err(MatrixError::DimensionMismatch("not a permutation".into()));
            }
        }
        Self::from_columns(
            self.rows,
            self.col_idx
                .iter()
                .map(|list| list.iter().map(|&r| new_of_old[r]).collect())
                .collect(),
        )
    }

    /// Keeps the entries for which `keep(row, col)` holds.
    pub fn filter_entries(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        Self::from_columns(
            self.rows,
            self.col_idx
                .iter()
                .enumerate()
                .map(|(c, list)| list.iter().copied().filter(|&r| keep(r, c)).collect())
                .collect(),
        )
        .expect("subset of a valid matrix")
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            col_idx: self.row_idx.clone(),
            row_idx: self.col_idx.clone(),
        }
    }

    /// `H x` over GF(2) for a 0/1 vector `x`.
    pub fn mul_vec(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.cols, "vector length");
        self.row_idx
            .iter()
            .map(|cols| cols.iter().fold(0u8, |acc, &c| acc ^ (x[c] & 1)))
            .collect()
    }

    /// Whether `H x = 0`.
    pub fn syndrome_is_zero(&self, x: &[u8]) -> bool {
        x.len() == self.cols
            && self
                .row_idx
                .iter()
                .all(|cols| cols.iter().fold(0u8, |acc, &c| acc ^ (x[c] & 1)) == 0)
    }

    /// Square, lower triangular, with every diagonal entry set.
    pub fn is_unit_lower_triangular(&self) -> bool {
        self.rows == self.cols
            && self
                .col_idx
                .iter()
                .enumerate()
                .all(|(c, list)| list.first() == Some(&c))
    }

    /// Square with ones exactly on the diagonal and the subdiagonal.
    pub fn is_double_diagonal(&self) -> bool {
        self.rows == self.cols
            && self.col_idx.iter().enumerate().all(|(c, list)| {
                if c + 1 < self.rows {
                    list.as_slice() == [c, c + 1]
                } else {
                    list.as_slice() == [c]
                }
            })
    }

    /// Dense 0/1 rows, for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.cols]; self.rows];
        for (r, c) in self.entries() {
            out[r][c] = 1;
        }
        out
    }

    pub fn to_bit_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for (r, c) in self.entries() {
            m.set(r, c);
        }
        m
    }

    pub fn regularity(&self) -> Regularity {
        Regularity {
            column: Weight::of(&self.column_weights()),
            row: Weight::of(&self.row_weights()),
        }
    }
}

impl fmt::Display for SparseBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            for b in row {
                f.write_str(if b == 1 { "1" } else { "." })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Constant weight, or the histogram `(weight, count)` when weights differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Constant(usize),
    Mixed(Vec<(usize, usize)>),
}

impl Weight {
    fn of(weights: &[usize]) -> Self {
        match weights.first() {
            None => Weight::Constant(0),
            Some(&w0) if weights.iter().all(|&w| w == w0) => Weight::Constant(w0),
            _ => {
                let mut hist = std::collections::BTreeMap::new();
                for &w in weights {
                    *hist.entry(w).or_insert(0) += 1;
                }
                Weight::Mixed(hist.into_iter().collect())
            }
        }
    }

    pub fn constant(&self) -> Option<usize> {
        match self {
            Weight::Constant(w) => Some(*w),
            Weight::Mixed(_) => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Constant(w) => write!(f, "{w}"),
            Weight::Mixed(h) => {
                f.write_str("mixed")?;
                for (w, n) in h {
                    write!(f, " {w}x{n}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    pub column: Weight,
    pub row: Weight,
}

/// `v x b` point-block incidence matrix, columns in block order.
pub fn incidence_matrix(d: &Design) -> SparseBinaryMatrix {
    SparseBinaryMatrix::from_columns(d.v(), d.blocks().iter().map(|b| b.points().to_vec()).collect())
        .expect("blocks lie in Z_v")
}

/// Code dimension `N - rank(H)`.
pub fn dimension(h: &SparseBinaryMatrix) -> usize {
    h.cols() - rank_gf2(h)
}

/// `(N - rank(H)) / N`.
pub fn rate(h: &SparseBinaryMatrix) -> f64 {
    if h.cols() == 0 {
        return 0.0;
    }
    dimension(h) as f64 / h.cols() as f64
}

/// Known 2-rank facts of the incidence matrix of a BIBD(v,k,1): the rank is
/// at most `v`, and when `(v - 1)/(k - 1)` is even it is at least `v - 1`,
/// with `v - 1` exactly when `k` is even.
pub fn rank_facts_hold(v: usize, k: usize, rank: usize) -> bool {
    if rank > v {
        return false;
    }
    if k < 2 || !(v - 1).is_multiple_of(k - 1) || !((v - 1) / (k - 1)).is_multiple_of(2) {
        return true;
    }
    if k.is_multiple_of(2) {
        rank == v - 1
    } else {
        rank == v
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::fano_h;
    use super::*;
    use crate::designs::verify::fixtures::ag23;
    use proptest::prelude::*;

    #[test]
    fn incidence_examples() {
        let h = fano_h();
        assert_eq!((h.rows(), h.cols()), (7, 7));
        assert_eq!(
            h.regularity(),
            Regularity {
                column: Weight::Constant(3),
                row: Weight::Constant(3)
            }
        );
        let a = incidence_matrix(&ag23());
        assert_eq!((a.rows(), a.cols()), (9, 12));
        assert_eq!(
            a.regularity(),
            Regularity {
                column: Weight::Constant(3),
                row: Weight::Constant(4)
            }
        );
        let single = incidence_matrix(&Design::from_point_lists(2, 2, &[vec![0, 1]]).unwrap());
        assert_eq!(single.to_dense(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn regularity_examples() {
        let dd = SparseBinaryMatrix::from_columns(3, vec![vec![0, 1], vec![1, 2], vec![2]]).unwrap();
        assert!(dd.is_double_diagonal());
        let ra = fano_h().hconcat(&SparseBinaryMatrix::zeros(7, 0)).unwrap();
        assert_eq!(ra.regularity().column, Weight::Constant(3));
        let mixed = SparseBinaryMatrix::from_columns(3, vec![vec![0, 1, 2], vec![0, 1], vec![1, 2], vec![2]]).unwrap();
        assert_eq!(mixed.regularity().column, Weight::Mixed(vec![(1, 1), (2, 2), (3, 1)]));
        assert_eq!(
            SparseBinaryMatrix::zeros(0, 0).regularity(),
            Regularity {
                column: Weight::Constant(0),
                row: Weight::Constant(0)
            }
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            SparseBinaryMatrix::from_columns(2, vec![vec![0, 0]]),
            Err(MatrixError::DuplicateEntry { row: 0, col: 0 })
        ));
        assert!(matches!(
            SparseBinaryMatrix::from_columns(2, vec![vec![2]]),
            Err(MatrixError::OutOfBounds { .. })
        ));
        assert!(SparseBinaryMatrix::identity(3).permute_rows(&[0, 0, 1]).is_err());
    }

    #[test]
    fn rank_and_rate() {
        let h = fano_h();
        assert_eq!(rank_gf2(&h), 4);
        assert_eq!(dimension(&h), 3);
        assert!((rate(&h) - 3.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn rank_facts_on_cyclic_designs() {
        use crate::designs::{buratti_cdf, expand_cdf_to_design, netto_cdf};
        for f in [netto_cdf(13), netto_cdf(37), buratti_cdf(13, 4), buratti_cdf(37, 4)] {
            let d = expand_cdf_to_design(&f.unwrap()).unwrap();
            let rank = rank_gf2(&incidence_matrix(&d));
            assert!(
                rank_facts_hold(d.v(), d.k(), rank),
                "v={} k={} rank={rank}",
                d.v(),
                d.k()
            );
        }
        assert!(!rank_facts_hold(13, 3, 12));
        assert!(!rank_facts_hold(13, 4, 13));
        assert!(rank_facts_hold(7, 3, 4));
    }

    fn arb_matrix() -> impl Strategy<Value = SparseBinaryMatrix> {
        (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), r), c).prop_map(move |cols| {
                SparseBinaryMatrix::from_columns(
                    r,
                    cols.iter()
                        .map(|col| col.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn mirrors_always_agree(m in arb_matrix()) {
            prop_assert!(m.mirrors_agree());
            prop_assert!(m.transpose().mirrors_agree());
            prop_assert_eq!(m.transpose().transpose(), m.clone());
            let rev: Vec<usize> = (0..m.rows()).rev().collect();
            let p = m.permute_rows(&rev).unwrap();
            prop_assert!(p.mirrors_agree());
            prop_assert_eq!(p.permute_rows(&rev).unwrap(), m);
        }

        #[test]
        fn dense_round_trip(m in arb_matrix()) {
            prop_assert_eq!(SparseBinaryMatrix::from_dense(&m.to_dense()).unwrap(), m);
        }
    }
}
