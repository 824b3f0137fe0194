//! Systematic and weight-q repeat-accumulate codes: the generalized
//! accumulator and the transforms that turn an orbit or a set of resolution
//! classes of a design into the accumulator part `H2` of `H = [H1 | H2]`.

mod accumulator;
mod cdf;
mod crc;
mod kts;

use std::fmt::Write as _;

use thiserror::Error;

use crate::designs::DesignError;
use crate::matrices::{MatrixError, SparseBinaryMatrix};

pub use accumulator::{
    accumulate, forward_substitute, h2_from_spec, realized_accumulator, Accumulator, AccumulatorSpec,
};
pub use cdf::{sra_from_cdf, wqra_from_cdf};
pub use crc::{chain_columns, class_orbits, crcbibd_chain, sra_from_crcbibd, wqra_from_crcbibd, CrcChain};
pub use kts::{kts_tail, sra_from_kts, w3ra_from_kts, KtsTail};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RaError {
    #[error("invalid accumulator: {0}")]
    InvalidSpec(String),
    #[error("no full-orbit base block has difference 1")]
    NoUnitDifference,
    #[error("difference {0} is not generated by any full-orbit base block")]
    DifferenceAbsent(usize),
    #[error("orbit or class {0} is already used for H2")]
    OrbitOverlap(usize),
    #[error("index {index} out of range ({len} available)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("last three classes are not a Kirkman tail: {0}")]
    NotKtsTail(String),
    #[error("residual matrix does not form a single chain: {0}")]
    ChainBroken(String),
    #[error("no 1-entry has a coprime vertical distance to the next entry")]
    NoCoprimeDelta,
    #[error("chain property violated: {0}")]
    PropertyViolation(String),
    #[error("g1 = {g1} is not coprime to {modulus}")]
    BadG1 { g1: usize, modulus: usize },
    #[error("H2 is not unit lower triangular")]
    NotLowerTriangular,
    #[error("sidecar: {0}")]
    Sidecar(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `H = [H1 | H2]` with `H1` of size `M x K` and `H2` unit lower triangular
/// of size `M x M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaParityCheck {
    h1: SparseBinaryMatrix,
    h2: SparseBinaryMatrix,
    accumulator: Accumulator,
    provenance: String,
}

impl RaParityCheck {
    /// Validates the shapes and reads the accumulator structure off `H2`.
    pub fn new(h1: SparseBinaryMatrix, h2: SparseBinaryMatrix, provenance: impl Into<String>) -> Result<Self, RaError> {
        if h1.rows() != h2.rows() {
            return Err(
                MatrixError::DimensionMismatch(format!("H1 has {} rows, H2 has {}", h1.rows(), h2.rows())).into(),
            );
        }
        let accumulator = realized_accumulator(&h2)?;
        Ok(Self {
            h1,
            h2,
            accumulator,
            provenance: provenance.into(),
        })
    }

    /// Splits `H` into its first `N - M` and last `M` columns.
    pub fn from_h(h: &SparseBinaryMatrix, provenance: impl Into<String>) -> Result<Self, RaError> {
        let m = h.rows();
        if h.cols() < m {
            return Err(
                MatrixError::DimensionMismatch(format!("{} columns cannot hold an {m} x {m} H2", h.cols())).into(),
            );
        }
        let k = h.cols() - m;
        Self::new(h.column_range(0..k), h.column_range(k..h.cols()), provenance)
    }

    pub fn h1(&self) -> &SparseBinaryMatrix {
        &self.h1
    }

    pub fn h2(&self) -> &SparseBinaryMatrix {
        &self.h2
    }

    /// `[H1 | H2]`.
    pub fn h(&self) -> SparseBinaryMatrix {
        self.h1.hconcat(&self.h2).expect("row counts checked")
    }

    pub fn accumulator(&self) -> &Accumulator {
        &self.accumulator
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.h2.rows()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.h1.cols()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.k() + self.m()
    }

    /// Largest column weight of `H2`.
    pub fn q(&self) -> usize {
        self.h2.column_weights().into_iter().max().unwrap_or(0)
    }

    pub fn rate(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            self.k() as f64 / self.n() as f64
        }
    }

    /// Parity bits `p` with `H2 p = H1 u`.
    pub fn parity(&self, message: &[u8]) -> Vec<u8> {
        let r = self.h1.mul_vec(message);
        match &self.accumulator {
            Accumulator::Spec(spec) => accumulate(&r, spec),
            Accumulator::Irregular => forward_substitute(&self.h2, &r),
        }
    }

    /// Systematic codeword `[u | p]`.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        let mut c = message.to_vec();
        c.extend(self.parity(message));
        c
    }

    /// `key=value` lines describing the code.
    pub fn sidecar(&self) -> String {
        let g = match self.accumulator.spec() {
            Some(spec) => spec.g().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            None => "irregular".into(),
        };
        let mut out = String::new();
        let _ = writeln!(out, "M={}", self.m());
        let _ = writeln!(out, "K={}", self.k());
        let _ = writeln!(out, "q={}", self.q());
        let _ = writeln!(out, "g={g}");
        let _ = writeln!(out, "provenance={}", self.provenance);
        out
    }
}

/// Contents of an RA sidecar file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar {
    pub m: usize,
    pub k: usize,
    pub q: usize,
    /// `None` for an irregular accumulator.
    pub g: Option<Vec<usize>>,
    pub provenance: String,
}

impl Sidecar {
    pub fn parse(text: &str) -> Result<Self, RaError> {
        let mut m = None;
        let mut k = None;
        let mut q = None;
        let mut g = None;
        let mut provenance = String::new();
        let num = |key: &str, v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| RaError::Sidecar(format!("bad {key}: {v:?}")))
        };
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| RaError::Sidecar(format!("expected key=value: {line:?}")))?;
            match key.trim() {
                "M" => m = Some(num("M", value)?),
                "K" => k = Some(num("K", value)?),
                "q" => q = Some(num("q", value)?),
                "g" => {
                    g = Some(if value.trim() == "irregular" {
                        None
                    } else {
                        Some(value.split(',').map(|x| num("g", x)).collect::<Result<Vec<_>, _>>()?)
                    })
                }
                "provenance" => provenance = value.to_string(),
                other => return Err(RaError::Sidecar(format!("unknown key {other:?}"))),
            }
        }
        match (m, k, q, g) {
            (Some(m), Some(k), Some(q), Some(g)) => Ok(Self { m, k, q, g, provenance }),
            _ => Err(RaError::Sidecar("needs M, K, q and g".into())),
        }
    }

    /// Rebuilds the RA code from `H`, checking it against the sidecar.
    pub fn attach(&self, h: &SparseBinaryMatrix) -> Result<RaParityCheck, RaError> {
        if h.rows() != self.m || h.cols() != self.m + self.k {
            return Err(RaError::Sidecar(format!(
                "H is {} x {}, sidecar says M={} K={}",
                h.rows(),
                h.cols(),
                self.m,
                self.k
            )));
        }
        let ra = RaParityCheck::from_h(h, self.provenance.clone())?;
        let realized = ra.accumulator().spec().map(|s| s.g().to_vec());
        if realized != self.g {
            return Err(RaError::Sidecar("g does not match H2".into()));
        }
        Ok(ra)
    }
}

/// Index validation shared by the transforms.
fn check_indices(indices: &[usize], len: usize, reserved: &[usize]) -> Result<(), RaError> {
    for &i in indices {
        if i >= len {
            return Err(RaError::IndexOutOfRange { index: i, len });
        }
        if reserved.contains(&i) {
            return Err(RaError::OrbitOverlap(i));
        }
    }
    Ok(())
}
