use super::{MatrixError, SparseBinaryMatrix};

/// One block column: `circulant_size` columns, column `s` being the first
/// column cyclically shifted down by `s` inside every row block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcBlockColumn {
    /// Row indices of the first column.
    pub pattern: Vec<usize>,
    pub shifts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcLayout {
    pub circulant_size: usize,
    pub rows: usize,
    pub block_columns: Vec<QcBlockColumn>,
}

fn shifted(pattern: &[usize], s: usize, size: usize) -> Vec<usize> {
    let mut out: Vec<usize> = pattern.iter().map(|&r| r - r % size + (r % size + s) % size).collect();
    out.sort_unstable();
    out
}

impl QcLayout {
    /// Rebuilds the full matrix.
    pub fn expand(&self) -> SparseBinaryMatrix {
        let cols = self
            .block_columns
            .iter()
            .flat_map(|b| (0..b.shifts).map(move |s| shifted(&b.pattern, s, self.circulant_size)))
            .collect();
        SparseBinaryMatrix::from_columns(self.rows, cols).expect("layout rows in range")
    }
}

/// Checks that `m` is a grid of `size x size` circulants and returns its
/// compact form.
pub fn qc_layout(m: &SparseBinaryMatrix, size: usize) -> Result<QcLayout, MatrixError> {
    if size == 0 || !m.cols().is_multiple_of(size) || !m.rows().is_multiple_of(size) {
        return Err(MatrixError::DimensionMismatch(format!(
            "{} x {} is not a grid of {size} x {size} blocks",
            m.rows(),
            m.cols()
        )));
    }
    let mut block_columns = Vec::with_capacity(m.cols() / size);
    for b in 0..m.cols() / size {
        let pattern = m.column(b * size).to_vec();
        for s in 1..size {
            if m.column(b * size + s) != shifted(&pattern, s, size).as_slice() {
                return Err(MatrixError::NotQuasiCyclic { block: b });
            }
        }
        block_columns.push(QcBlockColumn { pattern, shifts: size });
    }
    Ok(QcLayout {
        circulant_size: size,
        rows: m.rows(),
        block_columns,
    })
}
