//! Encoding, the BPSK/AWGN channel, belief-propagation decoding and the
//! Monte Carlo BER harness. Decoders and channels are generic over the
//! floating-point type.

mod campaign;
mod channel;
mod decoder;
mod encoder;
mod ml;

use thiserror::Error;

use crate::matrices::MatrixError;
use crate::ra::RaError;

pub use campaign::{
    ber_campaign, frame_rng, records_to_csv, wilson_interval, BerRecord, CampaignConfig, StopRule, CSV_HEADER,
};
pub use channel::{noise_variance, transmit, ChannelConfig};
pub use decoder::{sum_product_decode, DecodeOutput, Decoder, DecoderConfig};
pub use encoder::{Encoder, EncoderMode};
pub use ml::{ml_decode_exhaustive, ML_MAX_K};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodecError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parity-check matrix has full column rank {rank}; no message bits remain")]
    RankDeficient { rank: usize },
    #[error("code dimension {k} exceeds the exhaustive limit {max}")]
    TooLarge { k: usize, max: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Ra(#[from] RaError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
