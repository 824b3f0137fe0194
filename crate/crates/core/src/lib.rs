//! LDPC and weight-q repeat-accumulate codes built from balanced incomplete
//! block designs: design constructions, GF(2) matrix tooling, accumulator
//! transforms, and a sum-product decoder with a Monte Carlo BER harness.

pub mod algebra;
pub mod codec;
pub mod designs;
pub mod matrices;
pub mod ra;

/// Double-precision decoder.
pub type Decoder64 = codec::Decoder<f64>;
/// Single-precision decoder.
pub type Decoder32 = codec::Decoder<f32>;

pub use codec::CodecError;
pub use designs::DesignError;
pub use matrices::{MatrixError, SparseBinaryMatrix};
pub use ra::RaError;
