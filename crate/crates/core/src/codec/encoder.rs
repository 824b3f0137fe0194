use super::CodecError;
use crate::matrices::SparseBinaryMatrix;
use crate::ra::RaParityCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncoderMode {
    /// `c = [m | accumulate(H1 m)]`.
    SystematicRa,
    /// Message on the non-pivot columns of the reduced row echelon form of
    /// `H`, parity on the pivot columns.
    GeneralGe,
}

#[derive(Debug, Clone)]
enum Inner {
    Ra(RaParityCheck),
    Ge {
        /// Pivot column of each reduced row and its dependence on the
        /// message, packed over message indices.
        rows: Vec<(usize, Vec<u64>)>,
    },
}

/// Systematic encoder for the code `{c : H c = 0}`.
#[derive(Debug, Clone)]
pub struct Encoder {
    h: SparseBinaryMatrix,
    inner: Inner,
    /// Message positions followed by parity positions.
    column_permutation: Vec<usize>,
}

impl Encoder {
    pub fn new(h: &SparseBinaryMatrix, mode: EncoderMode) -> Result<Self, CodecError> {
        match mode {
            EncoderMode::SystematicRa => Ok(Self::from_ra(RaParityCheck::from_h(h, "")?)),
            EncoderMode::GeneralGe => Self::general(h),
        }
    }

    pub fn from_ra(ra: RaParityCheck) -> Self {
        let n = ra.n();
        Self {
            h: ra.h(),
            inner: Inner::Ra(ra),
            column_permutation: (0..n).collect(),
        }
    }

    fn general(h: &SparseBinaryMatrix) -> Result<Self, CodecError> {
        let echelon = h.to_bit_matrix().echelon();
        let free = echelon.free_columns();
        if free.is_empty() {
            return Err(CodecError::RankDeficient { rank: echelon.rank() });
        }
        let mut message_index = vec![usize::MAX; h.cols()];
        for (i, &f) in free.iter().enumerate() {
            message_index[f] = i;
        }
        let words = free.len().div_ceil(64);
        let rows = echelon
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let mut mask = vec![0u64; words];
                for &f in &free {
                    if echelon.reduced.get(r, f) {
                        let i = message_index[f];
                        mask[i / 64] |= 1 << (i % 64);
                    }
                }
                (p, mask)
            })
            .collect();
        let mut column_permutation = free;
        column_permutation.extend_from_slice(&echelon.pivots);
        Ok(Self {
            h: h.clone(),
            inner: Inner::Ge { rows },
            column_permutation,
        })
    }

    pub fn mode(&self) -> EncoderMode {
        match self.inner {
            Inner::Ra(_) => EncoderMode::SystematicRa,
            Inner::Ge { .. } => EncoderMode::GeneralGe,
        }
    }

    pub fn h(&self) -> &SparseBinaryMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of message bits.
    pub fn k(&self) -> usize {
        match &self.inner {
            Inner::Ra(ra) => ra.k(),
            Inner::Ge { rows } => self.n() - rows.len(),
        }
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// Codeword positions: the first `k()` carry the message in order.
    pub fn column_permutation(&self) -> &[usize] {
        &self.column_permutation
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>, CodecError> {
        if message.len() != self.k() {
            return Err(CodecError::DimensionMismatch(format!(
                "message has {} bits, the code carries {}",
                message.len(),
                self.k()
            )));
        }
        Ok(match &self.inner {
            Inner::Ra(ra) => ra.encode(message),
            Inner::Ge { rows } => {
                let mut packed = vec![0u64; message.len().div_ceil(64)];
                for (i, &b) in message.iter().enumerate() {
                    packed[i / 64] |= u64::from(b & 1) << (i % 64);
                }
                let mut c = vec![0u8; self.n()];
                for (i, &b) in message.iter().enumerate() {
                    c[self.column_permutation[i]] = b & 1;
                }
                for (p, mask) in rows {
                    let ones: u32 = mask.iter().zip(&packed).map(|(a, b)| (a & b).count_ones()).sum();
                    c[*p] = (ones & 1) as u8;
                }
                c
            }
        })
    }

    /// Message bits of a codeword.
    pub fn extract_message(&self, codeword: &[u8]) -> Vec<u8> {
        self.column_permutation[..self.k()]
            .iter()
            .map(|&i| codeword[i])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::expand_cdf_to_design;
    use crate::designs::netto_cdf;
    use crate::matrices::fixtures::fano_h;
    use crate::matrices::{incidence_matrix, rank_gf2};
    use crate::ra::sra_from_cdf;
    use rand::{Rng, SeedableRng};

    fn random_bits(rng: &mut impl Rng, n: usize) -> Vec<u8> {
        (0..n).map(|_| rng.random_range(0..2)).collect()
    }

    #[test]
    fn fano_general() {
        let enc = Encoder::new(&fano_h(), EncoderMode::GeneralGe).unwrap();
        assert_eq!(enc.k(), 3);
        assert_eq!(enc.encode(&[0, 0, 0]).unwrap(), vec![0; 7]);
        let mut words = std::collections::HashSet::new();
        for m in 0..8u8 {
            let msg = [m & 1, m >> 1 & 1, m >> 2 & 1];
            let c = enc.encode(&msg).unwrap();
            assert!(fano_h().syndrome_is_zero(&c));
            assert_eq!(enc.extract_message(&c), msg);
            words.insert(c);
        }
        assert_eq!(words.len(), 8);
        assert!(enc.encode(&[1, 0]).is_err());
    }

    #[test]
    fn full_rank_has_no_messages() {
        let h = SparseBinaryMatrix::identity(5);
        assert_eq!(
            Encoder::new(&h, EncoderMode::GeneralGe).unwrap_err(),
            CodecError::RankDeficient { rank: 5 }
        );
    }

    #[test]
    fn ra_and_general_agree_on_the_code() {
        let f = netto_cdf(19).unwrap();
        let ra = sra_from_cdf(&f, &[1, 2]).unwrap();
        let h = ra.h();
        let by_ra = Encoder::new(&h, EncoderMode::SystematicRa).unwrap();
        let by_ge = Encoder::new(&h, EncoderMode::GeneralGe).unwrap();
        assert_eq!(by_ra.k(), by_ge.k());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let m = random_bits(&mut rng, by_ra.k());
            let c = by_ra.encode(&m).unwrap();
            assert_eq!(&c[..m.len()], m.as_slice());
            assert!(h.syndrome_is_zero(&c));
            assert!(h.syndrome_is_zero(&by_ge.encode(&m).unwrap()));
        }
    }

    #[test]
    fn ldpc_general_dimension() {
        let h = incidence_matrix(&expand_cdf_to_design(&netto_cdf(31).unwrap()).unwrap());
        let enc = Encoder::new(&h, EncoderMode::GeneralGe).unwrap();
        assert_eq!(enc.k(), h.cols() - rank_gf2(&h));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let m = random_bits(&mut rng, enc.k());
            let c = enc.encode(&m).unwrap();
            assert!(h.syndrome_is_zero(&c));
            assert_eq!(enc.extract_message(&c), m);
        }
    }

    #[test]
    fn ra_mode_needs_triangular_tail() {
        assert!(matches!(
            Encoder::new(&fano_h(), EncoderMode::SystematicRa),
            Err(CodecError::Ra(_))
        ));
    }
}
