use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::CodecError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebno_db: f64,
    /// Code rate `K / N`.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebno_db: f64, rate: f64, seed: u64) -> Result<Self, CodecError> {
        if !(rate > 0.0 && rate <= 1.0) || !ebno_db.is_finite() {
            return Err(CodecError::InvalidConfig(format!("rate {rate}, Eb/N0 {ebno_db} dB")));
        }
        Ok(Self { ebno_db, rate, seed })
    }

    pub fn sigma2(&self) -> f64 {
        noise_variance(self.ebno_db, self.rate)
    }
}

/// `1 / (2 R Eb/N0)` with Eb/N0 given in dB.
pub fn noise_variance(ebno_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0))
}

/// BPSK (`0 -> +1`, `1 -> -1`) over AWGN with variance `sigma2`; returns the
/// channel LLRs `2 y / sigma2`.
pub fn transmit<T, R>(codeword: &[u8], sigma2: f64, rng: &mut R) -> Vec<T>
where
    T: Float,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    let sigma = T::from(sigma2.sqrt()).expect("finite variance");
    let scale = T::from(2.0 / sigma2).expect("finite variance");
    codeword
        .iter()
        .map(|&b| {
            let x = if b & 1 == 0 { T::one() } else { -T::one() };
            let n: T = StandardNormal.sample(rng);
            (x + sigma * n) * scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn variance_formula() {
        assert_eq!(noise_variance(0.0, 0.5), 1.0);
        assert!((noise_variance(10.0, 0.5) - 0.1).abs() < 1e-15);
        assert!(ChannelConfig::new(1.0, 0.0, 0).is_err());
        assert_eq!(ChannelConfig::new(0.0, 0.5, 0).unwrap().sigma2(), 1.0);
    }

    #[test]
    fn low_noise_keeps_signs() {
        let c = [0, 1, 1, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let llr: Vec<f64> = transmit(&c, 1e-6, &mut rng);
        let bits: Vec<u8> = llr.iter().map(|&l| u8::from(l < 0.0)).collect();
        assert_eq!(bits, c);
        let llr32: Vec<f32> = transmit(&c, 1e-4, &mut rng);
        assert!(llr32.iter().zip(c).all(|(&l, b)| (l < 0.0) == (b == 1)));
    }

    #[test]
    fn seeded_stream_repeats() {
        let c = vec![0u8; 64];
        let a: Vec<f64> = transmit(&c, 0.7, &mut ChaCha8Rng::seed_from_u64(42));
        let b: Vec<f64> = transmit(&c, 0.7, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
        let mean = a.iter().sum::<f64>() / 64.0;
        assert!(mean > 0.0);
    }
}
