use num_traits::Float;

use super::CodecError;
use crate::matrices::SparseBinaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    /// Messages are clipped to `[-llr_clamp, llr_clamp]`.
    pub llr_clamp: f64,
    /// Stop as soon as the hard decision has zero syndrome.
    pub early_exit: bool,
    /// Min-sum check update instead of the tanh rule.
    pub min_sum: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50,
            llr_clamp: 30.0,
            early_exit: true,
            min_sum: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutput {
    pub bits: Vec<u8>,
    /// The hard decision has zero syndrome.
    pub converged: bool,
    /// Message-passing iterations run; 0 when the channel decision already
    /// was a codeword.
    pub iterations: usize,
}

/// Flooding belief propagation on the Tanner graph of `H`, with buffers
/// reused across frames.
#[derive(Debug, Clone)]
pub struct Decoder<T> {
    cfg: DecoderConfig,
    clamp: T,
    /// Edges are numbered check-major.
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    var_start: Vec<usize>,
    var_edges: Vec<usize>,
    v2c: Vec<T>,
    c2v: Vec<T>,
    total: Vec<T>,
    fwd: Vec<T>,
    bits: Vec<u8>,
}

impl<T: Float> Decoder<T> {
    pub fn new(h: &SparseBinaryMatrix, cfg: DecoderConfig) -> Result<Self, CodecError> {
        if cfg.max_iterations == 0 {
            return Err(CodecError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if cfg.llr_clamp.is_nan() || cfg.llr_clamp <= 0.0 {
            return Err(CodecError::InvalidConfig(format!(
                "llr_clamp {} must be positive",
                cfg.llr_clamp
            )));
        }
        let mut check_start = Vec::with_capacity(h.rows() + 1);
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut per_var: Vec<Vec<usize>> = vec![Vec::new(); h.cols()];
        check_start.push(0);
        for r in 0..h.rows() {
            for &c in h.row(r) {
                per_var[c].push(edge_var.len());
                edge_var.push(c);
            }
            check_start.push(edge_var.len());
        }
        let mut var_start = Vec::with_capacity(h.cols() + 1);
        var_start.push(0);
        let mut var_edges = Vec::with_capacity(h.nnz());
        for list in per_var {
            var_edges.extend(list);
            var_start.push(var_edges.len());
        }
        let e = edge_var.len();
        Ok(Self {
            cfg,
            clamp: T::from(cfg.llr_clamp).expect("finite clamp"),
            check_start,
            edge_var,
            var_start,
            var_edges,
            v2c: vec![T::zero(); e],
            c2v: vec![T::zero(); e],
            total: vec![T::zero(); h.cols()],
            fwd: Vec::new(),
            bits: vec![0; h.cols()],
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    fn clip(&self, x: T) -> T {
        x.max(-self.clamp).min(self.clamp)
    }

    fn syndrome_is_zero(&self) -> bool {
        self.check_start
            .windows(2)
            .all(|w| self.edge_var[w[0]..w[1]].iter().fold(0u8, |acc, &v| acc ^ self.bits[v]) == 0)
    }

    fn hard_decision(&mut self) {
        for (b, &t) in self.bits.iter_mut().zip(&self.total) {
            *b = u8::from(t < T::zero());
        }
    }

    fn check_update_tanh(&mut self) {
        let half = T::from(0.5).unwrap();
        let two = T::one() + T::one();
        for w in self.check_start.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            self.fwd.clear();
            let mut acc = T::one();
            for e in lo..hi {
                self.fwd.push(acc);
                acc = acc * (self.v2c[e].max(-self.clamp).min(self.clamp) * half).tanh();
            }
            let mut back = T::one();
            for e in (lo..hi).rev() {
                let p = self.fwd[e - lo] * back;
                back = back * (self.v2c[e].max(-self.clamp).min(self.clamp) * half).tanh();
                self.c2v[e] = (two * p.atanh()).max(-self.clamp).min(self.clamp);
            }
        }
    }

    fn check_update_min_sum(&mut self) {
        for w in self.check_start.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut negative = false;
            let (mut min1, mut min2, mut at) = (T::infinity(), T::infinity(), lo);
            for e in lo..hi {
                let m = self.v2c[e];
                negative ^= m < T::zero();
                let a = m.abs();
                if a < min1 {
                    min2 = min1;
                    min1 = a;
                    at = e;
                } else if a < min2 {
                    min2 = a;
                }
            }
            for e in lo..hi {
                let mag = if e == at { min2 } else { min1 };
                let sign_neg = negative ^ (self.v2c[e] < T::zero());
                let v = if sign_neg { -mag } else { mag };
                self.c2v[e] = self.clip(v);
            }
        }
    }

    /// Decodes one frame of channel LLRs (positive favours bit 0).
    pub fn decode(&mut self, llr: &[T]) -> Result<DecodeOutput, CodecError> {
        let n = self.total.len();
        if llr.len() != n {
            return Err(CodecError::DimensionMismatch(format!(
                "{} LLRs for {n} variables",
                llr.len()
            )));
        }
        self.total.copy_from_slice(llr);
        self.hard_decision();
        let mut converged = self.syndrome_is_zero();
        if converged && self.cfg.early_exit {
            return Ok(self.output(true, 0));
        }
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.v2c[e] = self.clip(llr[v]);
        }
        let mut iterations = 0;
        while iterations < self.cfg.max_iterations {
            iterations += 1;
            if self.cfg.min_sum {
                self.check_update_min_sum();
            } else {
                self.check_update_tanh();
            }
            #[allow(clippy::needless_range_loop)]
            for v in 0..n {
                let edges = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
                let sum = edges.iter().fold(llr[v], |acc, &e| acc + self.c2v[e]);
                self.total[v] = sum;
                for &e in edges {
                    self.v2c[e] = (sum - self.c2v[e]).max(-self.clamp).min(self.clamp);
                }
            }
            self.hard_decision();
            converged = self.syndrome_is_zero();
            if converged && self.cfg.early_exit {
                break;
            }
        }
        Ok(self.output(converged, iterations))
    }

    fn output(&self, converged: bool, iterations: usize) -> DecodeOutput {
        DecodeOutput {
            bits: self.bits.clone(),
            converged,
            iterations,
        }
    }
}

/// One-shot sum-product decoding.
pub fn sum_product_decode<T: Float>(
    h: &SparseBinaryMatrix,
    llr: &[T],
    cfg: DecoderConfig,
) -> Result<DecodeOutput, CodecError> {
    Decoder::new(h, cfg)?.decode(llr)
}
