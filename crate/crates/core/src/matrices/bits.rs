use super::SparseBinaryMatrix;

/// Dense GF(2) matrix, rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    fn xor_row(&mut self, dst: usize, src: usize) {
        let (w, d) = (self.words, &mut self.data);
        if dst < src {
            let (lo, hi) = d.split_at_mut(src * w);
            for (x, y) in lo[dst * w..dst * w + w].iter_mut().zip(&hi[..w]) {
                *x ^= *y;
            }
        } else {
            let (lo, hi) = d.split_at_mut(dst * w);
            for (x, y) in hi[..w].iter_mut().zip(&lo[src * w..src * w + w]) {
                *x ^= *y;
            }
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn echelon(mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(p) = (pr..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(pr, p);
            for r in 0..self.rows {
                if r != pr && self.get(r, c) {
                    self.xor_row(r, pr);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Echelon { reduced: self, pivots }
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: BitMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// One null-space vector per free column `f`: ones at `f` and at the
    /// pivots of rows with a one in column `f`. Packed into 64-bit words.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let cols = self.reduced.cols();
        let words = cols.div_ceil(64);
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![0u64; words];
                v[f / 64] |= 1 << (f % 64);
                for (i, &p) in self.pivots.iter().enumerate() {
                    if self.reduced.get(i, f) {
                        v[p / 64] |= 1 << (p % 64);
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank over GF(2).
pub fn rank_gf2(m: &SparseBinaryMatrix) -> usize {
    // eliminate along the shorter side
    let t;
    let src = if m.rows() > m.cols() {
        t = m.transpose();
        &t
    } else {
        m
    };
    src.to_bit_matrix().echelon().rank()
}
