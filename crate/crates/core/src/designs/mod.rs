//! Block designs with `lambda = 1`: difference families and their orbit
//! expansion, pair-coverage and resolution checks, resolution search, and the
//! existence catalogue for cyclic, resolvable and cyclically resolvable
//! designs.

mod dlog;
mod existence;
mod family;
mod file;
mod resolution;
pub(crate) mod verify;

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use dlog::{netto_dlog_from_index, netto_index_from_dlog, netto_offset_log, netto_unit_position, NettoPosition};
pub use existence::{
    cdf_existence_status, crcbibd_exists, rbibd_existence_status, Existence, ExistenceStatus, LdpcParameters,
    TABLE_II_K5, TABLE_II_K7, TABLE_II_K9, TABLE_I_K5, TABLE_I_K8,
};
pub use family::{
    block_differences, buratti_base_set, buratti_cdf, expand_cdf_to_design, find_base_block_with_difference, netto_cdf,
    positive_differences, radical_df_search, DifferenceFamily, FamilyKind, DEFAULT_RDF_BUDGET,
};
pub use file::{parse_design, write_design, LoadOptions};
pub use resolution::{find_cyclic_resolution, find_resolution, DEFAULT_NODE_BUDGET};
pub use verify::{verify_bibd, verify_resolution, BibdReport, ClassDefect, ResolutionReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("bad modulus {modulus}: {reason}")]
    BadModulus { modulus: u64, reason: String },
    #[error("no admissible b for Buratti's base set {{0,1,b,...}} modulo {p} with k = {k}")]
    SearchExhausted { p: u64, k: usize },
    #[error("no radical difference family exists for p = {p}, k = {k}")]
    NotFound { p: u64, k: usize },
    #[error("search budget of {budget} nodes exhausted")]
    Timeout { budget: u64 },
    #[error("no resolution exists")]
    Infeasible,
    #[error("difference family does not tile the nonzero residues: {0}")]
    InvalidFamily(String),
    #[error("design has no resolution")]
    MissingResolution,
    #[error("difference {0} is not generated by any full-orbit base block")]
    DifferenceNotFound(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("design file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A block: a sorted set of distinct points of `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<usize>);

impl Block {
    pub fn new(points: impl IntoIterator<Item = usize>, v: usize) -> Result<Self, DesignError> {
        let mut pts: Vec<usize> = points.into_iter().collect();
        if let Some(&bad) = pts.iter().find(|&&x| x >= v) {
            return Err(DesignError::InvalidBlock(format!("point {bad} outside Z_{v}")));
        }
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(DesignError::InvalidBlock(format!("repeated point in {pts:?}")));
        }
        Ok(Self(pts))
    }

    /// Reduces every point modulo `v` before validating.
    pub fn from_residues(points: impl IntoIterator<Item = u64>, v: usize) -> Result<Self, DesignError> {
        Self::new(points.into_iter().map(|x| (x % v as u64) as usize), v)
    }

    #[inline]
    pub fn points(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `B + shift (mod v)`.
    pub fn translate(&self, shift: usize, v: usize) -> Block {
        let mut pts: Vec<usize> = self.0.iter().map(|&x| (x + shift) % v).collect();
        pts.sort_unstable();
        Block(pts)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// Partition of the block indices of a design into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    classes: Vec<Vec<usize>>,
}

impl Resolution {
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        Self { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Base blocks of the full orbits plus whether the regular short orbit
/// `{0, v/k, ..., (k-1)v/k}` is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicStructure {
    pub base_blocks: Vec<Block>,
    pub short_orbit: bool,
}

impl CyclicStructure {
    /// Orbit lengths in block order: `v` for each base block, then `v/k` for
    /// the short orbit when present.
    pub fn orbit_lengths(&self, v: usize, k: usize) -> Vec<usize> {
        let mut out = vec![v; self.base_blocks.len()];
        if self.short_orbit {
            out.push(v / k);
        }
        out
    }
}

/// A block design on the point set `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<Block>,
    resolution: Option<Resolution>,
    cyclic: Option<CyclicStructure>,
}

impl Design {
    pub fn new(v: usize, k: usize, blocks: Vec<Block>) -> Result<Self, DesignError> {
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != k {
                return Err(DesignError::InvalidBlock(format!(
                    "block {i} has {} points, expected {k}",
                    b.len()
                )));
            }
            if b.points().last().is_some_and(|&x| x >= v) {
                return Err(DesignError::InvalidBlock(format!("block {i} leaves Z_{v}")));
            }
        }
        Ok(Self {
            v,
            k,
            blocks,
            resolution: None,
            cyclic: None,
        })
    }

    /// Builds a design from raw point lists.
    pub fn from_point_lists(v: usize, k: usize, lists: &[Vec<usize>]) -> Result<Self, DesignError> {
        let blocks = lists
            .iter()
            .map(|l| Block::new(l.iter().copied(), v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(v, k, blocks)
    }

    pub fn with_resolution(mut self, resolution: Resolution) -> Result<Self, DesignError> {
        for class in resolution.classes() {
            if let Some(&bad) = class.iter().find(|&&i| i >= self.blocks.len()) {
                return Err(DesignError::OutOfRange(format!("class refers to block {bad}")));
            }
        }
        self.resolution = Some(resolution);
        Ok(self)
    }

    pub fn with_cyclic(mut self, cyclic: CyclicStructure) -> Self {
        self.cyclic = Some(cyclic);
        self
    }

    pub fn without_resolution(mut self) -> Self {
        self.resolution = None;
        self
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks.
    #[inline]
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Replication number implied by `lambda = 1`, `(v - 1) / (k - 1)`.
    pub fn r(&self) -> Option<usize> {
        if self.k < 2 || !(self.v - 1).is_multiple_of(self.k - 1) {
            return None;
        }
        Some((self.v - 1) / (self.k - 1))
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn resolution(&self) -> Option<&Resolution> {
        self.resolution.as_ref()
    }

    pub fn cyclic(&self) -> Option<&CyclicStructure> {
        self.cyclic.as_ref()
    }

    /// Whether translation by one maps the block set onto itself.
    pub fn is_shift_invariant(&self) -> bool {
        let set: std::collections::HashSet<&Block> = self.blocks.iter().collect();
        set.len() == self.blocks.len() && self.blocks.iter().all(|b| set.contains(&b.translate(1, self.v)))
    }

    /// Per-point replication counts.
    pub fn replication(&self) -> Vec<usize> {
        let mut rep = vec![0; self.v];
        for b in &self.blocks {
            for &x in b.points() {
                rep[x] += 1;
            }
        }
        rep
    }
}
