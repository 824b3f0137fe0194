use std::fmt::Write as _;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{noise_variance, transmit, CodecError, Decoder, DecoderConfig, Encoder};

pub const CSV_HEADER: &str = "ebno_db,frames,bit_errors,frame_errors,bits_total,ber,fer,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    /// Stop a point once this many frames failed; 0 runs `max_frames`.
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_frame_errors: 100,
            max_frames: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub stop: StopRule,
    pub decoder: DecoderConfig,
    /// Frames simulated in parallel between stop checks. Results do not
    /// depend on it.
    pub batch: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            stop: StopRule::default(),
            decoder: DecoderConfig::default(),
            batch: 512,
        }
    }
}

/// Tallies of one SNR point. Bit errors are counted on message bits; a frame
/// error is any decoded word differing from the transmitted codeword.
#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub ebno_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub bits_total: u64,
    /// Frames decoded to a different valid codeword.
    pub undetected_errors: u64,
    pub seed: u64,
}

impl BerRecord {
    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.bits_total)
    }

    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    /// 95% Wilson interval of the bit error rate.
    pub fn ber_interval(&self) -> (f64, f64) {
        wilson_interval(self.bit_errors, self.bits_total)
    }

    pub fn fer_interval(&self) -> (f64, f64) {
        wilson_interval(self.frame_errors, self.frames)
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Generator for frame `frame` of SNR point `point`: the noise and message of
/// a frame depend on nothing else.
pub fn frame_rng(seed: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut key = seed ^ (point as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    key = (key ^ (key >> 31)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(frame);
    rng
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameResult {
    bit_errors: u64,
    failed: bool,
    undetected: bool,
}

fn run_frame<T>(encoder: &Encoder, decoder: &mut Decoder<T>, sigma2: f64, mut rng: ChaCha8Rng) -> FrameResult
where
    T: Float,
    StandardNormal: Distribution<T>,
{
    let message: Vec<u8> = (0..encoder.k()).map(|_| u8::from(rng.random::<bool>())).collect();
    let codeword = encoder.encode(&message).expect("message length matches");
    let llr: Vec<T> = transmit(&codeword, sigma2, &mut rng);
    let out = decoder.decode(&llr).expect("LLR length matches");
    let decoded = encoder.extract_message(&out.bits);
    let bit_errors = decoded.iter().zip(&message).filter(|(a, b)| a != b).count() as u64;
    let failed = out.bits != codeword;
    FrameResult {
        bit_errors,
        failed,
        undetected: failed && out.converged,
    }
}

/// Simulates every SNR point until the stop rule fires. Output depends only
/// on the inputs, not on thread count or batch size.
pub fn ber_campaign<T>(encoder: &Encoder, ebno_db: &[f64], cfg: &CampaignConfig) -> Result<Vec<BerRecord>, CodecError>
where
    T: Float + Send + Sync,
    StandardNormal: Distribution<T>,
{
    if cfg.stop.max_frames == 0 {
        return Ok(Vec::new());
    }
    let template = Decoder::<T>::new(encoder.h(), cfg.decoder)?;
    let rate = encoder.rate();
    let batch = cfg.batch.max(1) as u64;
    let mut records = Vec::with_capacity(ebno_db.len());
    for (point, &snr) in ebno_db.iter().enumerate() {
        let sigma2 = noise_variance(snr, rate);
        let mut rec = BerRecord {
            ebno_db: snr,
            frames: 0,
            bit_errors: 0,
            frame_errors: 0,
            bits_total: 0,
            undetected_errors: 0,
            seed: cfg.seed,
        };
        let done = |r: &BerRecord| {
            r.frames >= cfg.stop.max_frames
                || (cfg.stop.min_frame_errors > 0 && r.frame_errors >= cfg.stop.min_frame_errors)
        };
        while !done(&rec) {
            let start = rec.frames;
            let end = (start + batch).min(cfg.stop.max_frames);
            let results: Vec<FrameResult> = (start..end)
                .into_par_iter()
                .map_init(
                    || template.clone(),
                    |dec, frame| run_frame(encoder, dec, sigma2, frame_rng(cfg.seed, point, frame)),
                )
                .collect();
            for r in results {
                rec.frames += 1;
                rec.bits_total += encoder.k() as u64;
                rec.bit_errors += r.bit_errors;
                rec.frame_errors += u64::from(r.failed);
                rec.undetected_errors += u64::from(r.undetected);
                if done(&rec) {
                    break;
                }
            }
        }
        records.push(rec);
    }
    Ok(records)
}

/// CSV with [`CSV_HEADER`] and one row per record.
pub fn records_to_csv(records: &[BerRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.ebno_db,
            r.frames,
            r.bit_errors,
            r.frame_errors,
            r.bits_total,
            r.ber(),
            r.fer(),
            r.seed
        );
    }
    out
}
