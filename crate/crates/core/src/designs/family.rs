use std::collections::HashSet;

use super::{Block, CyclicStructure, Design, DesignError};
use crate::algebra::{is_prime, PrimeField};

/// Default node budget for [`radical_df_search`].
pub const DEFAULT_RDF_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Cyclic difference family.
    Cdf,
    /// Radical family: every base block is a coset of the k-th roots of unity.
    Rdf,
}

/// Base blocks of the full orbits of a cyclic design with `lambda = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceFamily {
    pub modulus: usize,
    pub k: usize,
    pub base_blocks: Vec<Block>,
    pub kind: FamilyKind,
    /// The design additionally contains the regular short orbit.
    pub has_short_orbit_block: bool,
}

impl DifferenceFamily {
    pub fn new(
        modulus: usize,
        k: usize,
        base_blocks: Vec<Block>,
        kind: FamilyKind,
        has_short_orbit_block: bool,
    ) -> Self {
        Self {
            modulus,
            k,
            base_blocks,
            kind,
            has_short_orbit_block,
        }
    }

    /// Multiplicity of every residue in the union of the base-block
    /// difference multisets, indexed by residue.
    pub fn difference_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.modulus];
        for b in &self.base_blocks {
            for d in block_differences(b, self.modulus) {
                counts[d] += 1;
            }
        }
        counts
    }

    /// Checks that the differences cover every nonzero residue exactly once,
    /// except the nonzero multiples of `v/k` when the short orbit is present.
    pub fn check(&self) -> Result<(), DesignError> {
        let v = self.modulus;
        if self.base_blocks.iter().any(|b| b.len() != self.k) {
            return Err(DesignError::InvalidFamily("base block of wrong size".into()));
        }
        let step = if self.has_short_orbit_block {
            if self.k == 0 || !v.is_multiple_of(self.k) {
                return Err(DesignError::InvalidFamily(format!(
                    "short orbit needs k | v (v={v}, k={})",
                    self.k
                )));
            }
            Some(v / self.k)
        } else {
            None
        };
        let counts = self.difference_counts();
        for (d, &c) in counts.iter().enumerate().skip(1) {
            let expected = match step {
                Some(s) if d % s == 0 => 0,
                _ => 1,
            };
            if c != expected {
                return Err(DesignError::InvalidFamily(format!(
                    "difference {d} occurs {c} times, expected {expected}"
                )));
            }
        }
        Ok(())
    }

    /// The regular short-orbit base block `{0, v/k, ..., (k-1)v/k}`.
    pub fn short_orbit_block(&self) -> Option<Block> {
        if !self.has_short_orbit_block {
            return None;
        }
        let step = self.modulus / self.k;
        Some(Block((0..self.k).map(|i| i * step).collect()))
    }
}

/// The multiset `{b_i - b_j : i != j}` modulo `v`, in row-major pair order.
pub fn block_differences(b: &Block, v: usize) -> Vec<usize> {
    let pts = b.points();
    let mut out = Vec::with_capacity(pts.len() * pts.len().saturating_sub(1));
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate() {
            if i != j {
                out.push((x + v - y) % v);
            }
        }
    }
    out
}

/// `{e_i - e_j : j < i}` for elements listed in construction order.
pub fn positive_differences(elements: &[u64], p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for j in 0..elements.len() {
        for i in j + 1..elements.len() {
            out.push((elements[i] + p - elements[j]) % p);
        }
    }
    out
}

fn require_prime(p: u64) -> Result<(), DesignError> {
    if !is_prime(p) {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: "not prime".into(),
        });
    }
    Ok(())
}

/// Netto's family: the `t` cosets `omega^i * {1, z, z^2}` (`1 <= i <= t`) of
/// the cube roots of unity modulo `p = 6t + 1`.
pub fn netto_cdf(p: u64) -> Result<DifferenceFamily, DesignError> {
    require_prime(p)?;
    if p % 6 != 1 {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: "Netto's construction needs p = 1 (mod 6)".into(),
        });
    }
    let field = PrimeField::new(p)?;
    let t = (p - 1) / 6;
    let cube_roots = field.kth_roots_of_unity(3)?;
    let blocks = (1..=t)
        .map(|i| {
            let m = field.omega_pow(i as i64);
            Block::from_residues(cube_roots.iter().map(|&u| field.mul(m, u)), p as usize)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DifferenceFamily::new(p as usize, 3, blocks, FamilyKind::Rdf, false))
}

/// Smallest `b >= 2` for which `{0, 1, b, ..., b^(k-2)}` has positive
/// differences forming a system of representatives of the cosets of the
/// subgroup of `m`-th powers, `m = k(k-1)/2`.
///
/// Returns `b` together with the base set in construction order.
pub fn buratti_base_set(p: u64, k: usize) -> Result<(u64, Vec<u64>), DesignError> {
    let m = buratti_index(p, k)?;
    let field = PrimeField::new(p)?;
    // coset of x is log(x) mod m; x^((p-1)/m) is a faithful label.
    let exponent = (p - 1) / m;
    let zeta = field.pow(field.omega(), exponent);
    let mut label_of = std::collections::HashMap::with_capacity(m as usize);
    let mut z = 1;
    for i in 0..m {
        label_of.insert(z, i);
        z = field.mul(z, zeta);
    }
    for b in 2..p {
        let mut set = vec![0u64, 1];
        let mut x = 1;
        for _ in 2..k {
            x = field.mul(x, b);
            set.push(x);
        }
        let diffs = positive_differences(&set, p);
        if diffs.contains(&0) {
            continue;
        }
        let mut seen = vec![false; m as usize];
        let ok = diffs.iter().all(|&d| {
            let label = label_of[&field.pow(d, exponent)] as usize;
            !std::mem::replace(&mut seen[label], true)
        });
        if ok {
            return Ok((b, set));
        }
    }
    Err(DesignError::SearchExhausted { p, k })
}

fn buratti_index(p: u64, k: usize) -> Result<u64, DesignError> {
    require_prime(p)?;
    let m = match k {
        4 => 6,
        5 => 10,
        _ => {
            return Err(DesignError::BadModulus {
                modulus: p,
                reason: format!("Buratti's construction covers k = 4, 5, not {k}"),
            })
        }
    };
    if p % (2 * m) != 1 {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: format!("need p = 1 (mod {})", 2 * m),
        });
    }
    Ok(m)
}

/// Buratti's family `{omega^(m i) B : 1 <= i <= t}` with `m = 6` (k = 4) or
/// `m = 10` (k = 5) and `B` from [`buratti_base_set`].
pub fn buratti_cdf(p: u64, k: usize) -> Result<DifferenceFamily, DesignError> {
    let m = buratti_index(p, k)?;
    let (_, base) = buratti_base_set(p, k)?;
    let field = PrimeField::new(p)?;
    let t = (p - 1) / (2 * m);
    let blocks = (1..=t)
        .map(|i| {
            let mult = field.omega_pow((m * i) as i64);
            Block::from_residues(base.iter().map(|&x| field.mul(mult, x)), p as usize)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DifferenceFamily::new(p as usize, k, blocks, FamilyKind::Cdf, false))
}

/// Searches for a radical difference family: `n = (p-1)/(k(k-1))` cosets
/// `m_i U_k` of the k-th roots of unity whose differences tile `Z_p \ {0}`.
///
/// Working in the quotient of `Z_p^*` by `U_k` (cyclic of order
/// `(p-1)/k`), the differences of `m U_k` occupy the cosets
/// `log(m) + log(z^j - 1)`, so the search is an exact tiling of that cyclic
/// group by translates of one (k-1)-set. Cells are covered smallest first;
/// candidate multipliers are tried in ascending order of their least
/// representative.
pub fn radical_df_search(p: u64, k: usize, budget: u64) -> Result<DifferenceFamily, DesignError> {
    require_prime(p)?;
    if k < 3 || k.is_multiple_of(2) {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: format!("radical families need odd k >= 3, got {k}"),
        });
    }
    let kk = (k * (k - 1)) as u64;
    if p % kk != 1 {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: format!("need p = 1 (mod {kk})"),
        });
    }
    let field = PrimeField::new(p)?;
    let quotient = ((p - 1) / k as u64) as usize;
    let roots = field.kth_roots_of_unity(k as u64)?;

    let mut shape: Vec<usize> = roots[1..]
        .iter()
        .map(|&z| field.discrete_log(field.sub(z, 1)).map(|c| c as usize % quotient))
        .collect::<Result<_, _>>()?;
    shape.sort_unstable();
    if shape.windows(2).any(|w| w[0] == w[1]) {
        return Err(DesignError::NotFound { p, k });
    }

    // least element of each coset omega^x U_k
    let least: Vec<u64> = (0..quotient)
        .map(|x| {
            let m = field.omega_pow(x as i64);
            roots.iter().map(|&u| field.mul(m, u)).min().unwrap()
        })
        .collect();

    let mut covered = vec![false; quotient];
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    match tile(&shape, &least, &mut covered, &mut chosen, &mut nodes, budget) {
        Some(true) => {}
        Some(false) => return Err(DesignError::NotFound { p, k }),
        None => return Err(DesignError::Timeout { budget }),
    }
    let mut multipliers: Vec<u64> = chosen.iter().map(|&x| least[x]).collect();
    multipliers.sort_unstable();
    let blocks = multipliers
        .iter()
        .map(|&m| Block::from_residues(roots.iter().map(|&u| field.mul(m, u)), p as usize))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DifferenceFamily::new(p as usize, k, blocks, FamilyKind::Rdf, false))
}

/// `Some(true)` on success, `Some(false)` when the space is exhausted,
/// `None` when the budget runs out.
fn tile(
    shape: &[usize],
    least: &[u64],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    let n = covered.len();
    let Some(cell) = covered.iter().position(|c| !c) else {
        return Some(true);
    };
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let mut candidates: Vec<usize> = shape.iter().map(|&d| (cell + n - d) % n).collect();
    candidates.sort_unstable_by_key(|&x| least[x]);
    for x in candidates {
        if shape.iter().any(|&d| covered[(x + d) % n]) {
            continue;
        }
        for &d in shape {
            covered[(x + d) % n] = true;
        }
        chosen.push(x);
        match tile(shape, least, covered, chosen, nodes, budget) {
            Some(false) => {}
            other => return other,
        }
        chosen.pop();
        for &d in shape {
            covered[(x + d) % n] = false;
        }
    }
    Some(false)
}

/// Index of the first full-orbit base block whose difference multiset
/// contains `d` (0-based).
pub fn find_base_block_with_difference(f: &DifferenceFamily, d: usize) -> Result<usize, DesignError> {
    if d == 0 || d >= f.modulus {
        return Err(DesignError::Precondition(format!(
            "difference {d} outside [1, {}]",
            f.modulus.saturating_sub(1)
        )));
    }
    f.base_blocks
        .iter()
        .position(|b| block_differences(b, f.modulus).contains(&d))
        .ok_or(DesignError::DifferenceNotFound(d))
}

/// All distinct translates of every base block, base-block-major and
/// shift-minor, followed by the regular short orbit when present.
pub fn expand_cdf_to_design(f: &DifferenceFamily) -> Result<Design, DesignError> {
    f.check()?;
    let v = f.modulus;
    let mut blocks = Vec::with_capacity(f.base_blocks.len() * v + v / f.k.max(1));
    for b in &f.base_blocks {
        for s in 0..v {
            blocks.push(b.translate(s, v));
        }
    }
    if let Some(short) = f.short_orbit_block() {
        for s in 0..v / f.k {
            blocks.push(short.translate(s, v));
        }
    }
    // every translate of a full-orbit base block must be distinct
    let distinct: HashSet<&Block> = blocks.iter().collect();
    if distinct.len() != blocks.len() {
        return Err(DesignError::InvalidFamily("orbits overlap".into()));
    }
    Ok(Design::new(v, f.k, blocks)?.with_cyclic(CyclicStructure {
        base_blocks: f.base_blocks.clone(),
        short_orbit: f.has_short_orbit_block,
    }))
}
