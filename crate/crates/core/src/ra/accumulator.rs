use super::RaError;
use crate::matrices::SparseBinaryMatrix;

/// Generalized accumulator of parity length `M` with design parameters
/// `g_1, ..., g_{q-1}` and prefix sums `s_l = g_1 + ... + g_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AccumulatorSpec {
    m: usize,
    g: Vec<usize>,
    s: Vec<usize>,
}

impl AccumulatorSpec {
    /// Requires `q >= 2` and pairwise distinct `g_j` in `[1, M]`.
    pub fn new(m: usize, g: Vec<usize>) -> Result<Self, RaError> {
        if g.is_empty() {
            return Err(RaError::InvalidSpec("need at least one parameter g_1".into()));
        }
        if let Some(&bad) = g.iter().find(|&&x| x == 0 || x > m) {
            return Err(RaError::InvalidSpec(format!("g = {bad} outside [1, {m}]")));
        }
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(RaError::InvalidSpec(format!("parameters {g:?} are not distinct")));
        }
        Ok(Self::from_g_unchecked(m, g))
    }

    /// The classic `1 / (1 + D)` accumulator.
    pub fn double_diagonal(m: usize) -> Self {
        Self::from_g_unchecked(m, vec![1])
    }

    fn from_g_unchecked(m: usize, g: Vec<usize>) -> Self {
        let s = g
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        Self { m, g, s }
    }

    /// Spec read off a realized matrix: only asks for strictly increasing
    /// offsets, since a construction may repeat a gap.
    pub(crate) fn from_offsets(m: usize, s: Vec<usize>) -> Result<Self, RaError> {
        if s.is_empty() || s[0] == 0 || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RaError::InvalidSpec(format!(
                "offsets {s:?} are not strictly increasing"
            )));
        }
        let mut prev = 0;
        let g = s
            .iter()
            .map(|&x| {
                let d = x - prev;
                prev = x;
                d
            })
            .collect();
        Ok(Self { m, g, s })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Column weight of the full columns of `H2`.
    pub fn q(&self) -> usize {
        self.g.len() + 1
    }
}

/// `p_i = r_i + p_{i-s_1} + ... + p_{i-s_{q-1}}` over GF(2), skipping taps
/// before the start. Solves `H2 p = r`.
pub fn accumulate(r: &[u8], spec: &AccumulatorSpec) -> Vec<u8> {
    assert_eq!(r.len(), spec.m, "input length must equal M");
    let mut p = vec![0u8; r.len()];
    for i in 0..r.len() {
        let mut x = r[i] & 1;
        for &s in &spec.s {
            if s > i {
                break;
            }
            x ^= p[i - s];
        }
        p[i] = x;
    }
    p
}

/// `M x M` matrix whose column `i` has ones at rows `i` and `i + s_l` for
/// every `s_l` keeping the row inside the matrix.
pub fn h2_from_spec(spec: &AccumulatorSpec) -> SparseBinaryMatrix {
    let m = spec.m;
    let cols = (0..m)
        .map(|i| {
            std::iter::once(i)
                .chain(spec.s.iter().map(|&s| i + s).filter(|&r| r < m))
                .collect()
        })
        .collect();
    SparseBinaryMatrix::from_columns(m, cols).expect("rows in range")
}

/// Accumulator structure of a lower-triangular `H2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Accumulator {
    Spec(AccumulatorSpec),
    /// Unit lower triangular but not generated by a single offset set.
    Irregular,
}

impl Accumulator {
    pub fn spec(&self) -> Option<&AccumulatorSpec> {
        match self {
            Accumulator::Spec(s) => Some(s),
            Accumulator::Irregular => None,
        }
    }
}

/// Recovers the offsets from the first column and checks that every column
/// follows them.
pub fn realized_accumulator(h2: &SparseBinaryMatrix) -> Result<Accumulator, RaError> {
    if !h2.is_unit_lower_triangular() {
        return Err(RaError::NotLowerTriangular);
    }
    let m = h2.rows();
    if m == 0 {
        return Ok(Accumulator::Irregular);
    }
    let offsets: Vec<usize> = h2.column(0)[1..].to_vec();
    if offsets.is_empty() {
        return Ok(Accumulator::Irregular);
    }
    let spec = AccumulatorSpec::from_offsets(m, offsets)?;
    Ok(if h2_from_spec(&spec) == *h2 {
        Accumulator::Spec(spec)
    } else {
        Accumulator::Irregular
    })
}

/// Solves `H2 p = r` for unit lower-triangular `H2` by forward substitution.
pub fn forward_substitute(h2: &SparseBinaryMatrix, r: &[u8]) -> Vec<u8> {
    let mut p = vec![0u8; r.len()];
    for j in 0..r.len() {
        let mut x = r[j] & 1;
        for &i in h2.row(j) {
            if i < j {
                x ^= p[i];
            }
        }
        p[j] = x;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn cols(m: &SparseBinaryMatrix) -> Vec<Vec<usize>> {
        m.columns().to_vec()
    }

    #[test]
    fn accumulate_examples() {
        let dd = AccumulatorSpec::new(4, vec![1]).unwrap();
        assert_eq!(accumulate(&[1, 0, 1, 1], &dd), vec![1, 1, 0, 1]);
        let w3 = AccumulatorSpec::new(5, vec![1, 2]).unwrap();
        assert_eq!(accumulate(&[1, 0, 0, 1, 0], &w3), vec![1, 1, 1, 1, 0]);
        assert_eq!(accumulate(&[0; 5], &w3), vec![0; 5]);
    }

    #[test]
    fn h2_examples() {
        let dd = h2_from_spec(&AccumulatorSpec::new(3, vec![1]).unwrap());
        assert_eq!(cols(&dd), vec![vec![0, 1], vec![1, 2], vec![2]]);
        let w3 = h2_from_spec(&AccumulatorSpec::new(5, vec![1, 2]).unwrap());
        assert_eq!(
            cols(&w3),
            vec![vec![0, 1, 3], vec![1, 2, 4], vec![2, 3], vec![3, 4], vec![4]]
        );
        let swapped = h2_from_spec(&AccumulatorSpec::new(5, vec![2, 1]).unwrap());
        assert_eq!(swapped.column(0), &[0, 2, 3]);
    }

    #[test]
    fn spec_validation() {
        assert!(AccumulatorSpec::new(5, vec![]).is_err());
        assert!(AccumulatorSpec::new(5, vec![2, 2]).is_err());
        assert!(AccumulatorSpec::new(5, vec![0]).is_err());
        assert!(AccumulatorSpec::new(5, vec![6]).is_err());
        assert_eq!(AccumulatorSpec::new(9, vec![1, 3, 2]).unwrap().s(), &[1, 4, 6]);
        assert_eq!(AccumulatorSpec::from_offsets(9, vec![2, 4]).unwrap().g(), &[2, 2]);
    }

    #[test]
    fn realized_spec_round_trip() {
        let spec = AccumulatorSpec::new(12, vec![1, 4]).unwrap();
        let h2 = h2_from_spec(&spec);
        assert_eq!(realized_accumulator(&h2).unwrap(), Accumulator::Spec(spec));
        let irregular = h2.filter_entries(|r, c| !(r == 5 && c == 4));
        assert_eq!(realized_accumulator(&irregular).unwrap(), Accumulator::Irregular);
        let upper = SparseBinaryMatrix::from_columns(2, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(realized_accumulator(&upper), Err(RaError::NotLowerTriangular));
    }

    #[test]
    fn forward_substitution_matches_accumulate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let spec = AccumulatorSpec::new(40, vec![2, 5, 1]).unwrap();
        let h2 = h2_from_spec(&spec);
        for _ in 0..50 {
            let r: Vec<u8> = (0..40).map(|_| rng.random_range(0..2)).collect();
            assert_eq!(forward_substitute(&h2, &r), accumulate(&r, &spec));
        }
    }

    fn arb_spec() -> impl Strategy<Value = AccumulatorSpec> {
        (1usize..80)
            .prop_flat_map(|m| {
                (
                    Just(m),
                    proptest::sample::subsequence((1..=m).collect::<Vec<_>>(), 1..=m.min(5)),
                )
            })
            .prop_flat_map(|(m, g)| (Just(m), Just(g.clone()).prop_shuffle()))
            .prop_map(|(m, g)| AccumulatorSpec::new(m, g).unwrap())
    }

    proptest! {
        #[test]
        fn accumulate_inverts_h2(spec in arb_spec(), seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r: Vec<u8> = (0..spec.m()).map(|_| rng.random_range(0..2)).collect();
            let h2 = h2_from_spec(&spec);
            prop_assert!(h2.is_unit_lower_triangular());
            prop_assert_eq!(h2.mul_vec(&accumulate(&r, &spec)), r);
        }
    }
}
