use num_traits::Float;

use super::CodecError;
use crate::matrices::SparseBinaryMatrix;

/// Largest code dimension accepted by [`ml_decode_exhaustive`].
pub const ML_MAX_K: usize = 20;

/// Codeword maximizing the correlation with `llr`, by visiting all `2^K`
/// codewords in Gray-code order. Ties keep the first word visited, starting
/// from the all-zero word.
pub fn ml_decode_exhaustive<T: Float>(h: &SparseBinaryMatrix, llr: &[T]) -> Result<Vec<u8>, CodecError> {
    let n = h.cols();
    if llr.len() != n {
        return Err(CodecError::DimensionMismatch(format!(
            "{} LLRs for {n} variables",
            llr.len()
        )));
    }
    let basis = h.to_bit_matrix().echelon().nullspace_basis();
    if basis.len() > ML_MAX_K {
        return Err(CodecError::TooLarge {
            k: basis.len(),
            max: ML_MAX_K,
        });
    }
    let support: Vec<Vec<usize>> = basis
        .iter()
        .map(|w| (0..n).filter(|&i| w[i / 64] >> (i % 64) & 1 == 1).collect())
        .collect();
    let mut cur = vec![0u8; n];
    // sum of LLRs over the ones of the word; the correlation is minus twice it
    let mut cost = T::zero();
    let (mut best, mut best_cost) = (cur.clone(), T::zero());
    for i in 1u64..(1u64 << basis.len()) {
        for &j in &support[i.trailing_zeros() as usize] {
            cur[j] ^= 1;
            cost = if cur[j] == 1 { cost + llr[j] } else { cost - llr[j] };
        }
        if cost < best_cost {
            best_cost = cost;
            best.copy_from_slice(&cur);
        }
    }
    Ok(best)
}
