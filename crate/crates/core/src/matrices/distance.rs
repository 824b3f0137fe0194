use super::{MatrixError, SparseBinaryMatrix};

/// Largest code dimension enumerated exhaustively.
pub const EXHAUSTIVE_MAX_K: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Exact(usize),
    /// No nonzero codeword of weight at most the cap.
    AboveCap(usize),
    /// The code is `{0}`.
    NoCodewords,
}

/// Minimum nonzero codeword weight of the code `{x : H x = 0}`.
///
/// Dimensions up to [`EXHAUSTIVE_MAX_K`] are enumerated in Gray-code order.
/// Larger codes need `cap`; the search then looks for a set of at most `cap`
/// columns summing to zero.
pub fn min_distance(h: &SparseBinaryMatrix, cap: Option<usize>) -> Result<MinDistance, MatrixError> {
    let echelon = h.to_bit_matrix().echelon();
    let basis = echelon.nullspace_basis();
    let k = basis.len();
    if k == 0 {
        return Ok(MinDistance::NoCodewords);
    }
    if k <= EXHAUSTIVE_MAX_K {
        return Ok(MinDistance::Exact(gray_enumerate(&basis)));
    }
    let cap = cap.ok_or(MatrixError::TooLarge {
        k,
        max: EXHAUSTIVE_MAX_K,
    })?;
    for w in 1..=cap {
        if has_codeword_of_weight(h, w) {
            return Ok(MinDistance::Exact(w));
        }
    }
    Ok(MinDistance::AboveCap(cap))
}

fn gray_enumerate(basis: &[Vec<u64>]) -> usize {
    let words = basis[0].len();
    let mut cur = vec![0u64; words];
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << basis.len()) {
        let b = &basis[i.trailing_zeros() as usize];
        let mut weight = 0;
        for (c, x) in cur.iter_mut().zip(b) {
            *c ^= x;
            weight += c.count_ones() as usize;
        }
        best = best.min(weight);
    }
    best
}

/// Looks for `w` columns summing to zero; always succeeds when the minimum
/// distance is `w`. The smallest column of the set is fixed first; after that
/// the lowest row of the running syndrome must be cancelled by one of the
/// remaining columns.
fn has_codeword_of_weight(h: &SparseBinaryMatrix, w: usize) -> bool {
    let max_col_weight = h.column_weights().into_iter().max().unwrap_or(0);
    let words = h.rows().div_ceil(64).max(1);
    let mut syndrome = vec![0u64; words];
    let mut chosen = Vec::with_capacity(w);
    for first in 0..h.cols() {
        toggle(&mut syndrome, h.column(first));
        chosen.push(first);
        let found = extend(h, &mut syndrome, &mut chosen, w - 1, max_col_weight);
        chosen.pop();
        toggle(&mut syndrome, h.column(first));
        if found {
            return true;
        }
    }
    false
}

fn toggle(s: &mut [u64], rows: &[usize]) {
    for &r in rows {
        s[r / 64] ^= 1 << (r % 64);
    }
}

fn extend(h: &SparseBinaryMatrix, s: &mut [u64], chosen: &mut Vec<usize>, left: usize, max_w: usize) -> bool {
    let weight: usize = s.iter().map(|x| x.count_ones() as usize).sum();
    if left == 0 {
        return weight == 0;
    }
    if weight == 0 || weight > left * max_w {
        return false;
    }
    let (wi, word) = s.iter().enumerate().find(|(_, &x)| x != 0).unwrap();
    let row = wi * 64 + word.trailing_zeros() as usize;
    let first = chosen[0];
    for &c in h.row(row) {
        if c <= first || chosen.contains(&c) {
            continue;
        }
        toggle(s, h.column(c));
        chosen.push(c);
        let found = extend(h, s, chosen, left - 1, max_w);
        chosen.pop();
        toggle(s, h.column(c));
        if found {
            return true;
        }
    }
    false
}
