use std::collections::HashMap;

use super::{check_indices, RaError, RaParityCheck};
use crate::algebra::gcd;
use crate::designs::{Block, Design, DesignError};
use crate::matrices::SparseBinaryMatrix;

/// Orbits of the resolution classes under translation by one, each listed
/// as `C, C + 1, ...` starting from its lowest class index.
pub fn class_orbits(d: &Design) -> Result<Vec<Vec<usize>>, RaError> {
    let res = d.resolution().ok_or(DesignError::MissingResolution)?;
    let v = d.v();
    let block_index: HashMap<&Block, usize> = d.blocks().iter().enumerate().map(|(i, b)| (b, i)).collect();
    let key = |blocks: &[usize]| {
        let mut k = blocks.to_vec();
        k.sort_unstable();
        k
    };
    let class_index: HashMap<Vec<usize>, usize> = res.classes().iter().enumerate().map(|(i, c)| (key(c), i)).collect();
    let next: Vec<usize> = res
        .classes()
        .iter()
        .map(|class| {
            let shifted: Option<Vec<usize>> = class
                .iter()
                .map(|&b| block_index.get(&d.blocks()[b].translate(1, v)).copied())
                .collect();
            shifted
                .and_then(|s| class_index.get(&key(&s)).copied())
                .ok_or_else(|| RaError::PropertyViolation("translation by one does not permute the classes".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; next.len()];
    let mut orbits = Vec::new();
    for start in 0..next.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            orbit.push(c);
            c = next[c];
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Intermediate state of the row-permutation transform of one class orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrcChain {
    /// Classes of the orbit in shift order.
    pub classes: Vec<usize>,
    /// Block index of every column of `C`.
    pub columns: Vec<usize>,
    /// Starting 1-entry `(x1, y1)` of `C` and the distance to the next
    /// entry of column `y1`.
    pub x1: usize,
    pub y1: usize,
    pub delta: usize,
    /// `rows[n] = x1 + delta * n mod v`: original row placed at row `n`.
    pub rows: Vec<usize>,
    /// `C` with its rows permuted, columns in the order of `columns`.
    pub h2_hat: SparseBinaryMatrix,
    /// `chain[n]`: column of `h2_hat` holding rows `n` and `n + 1 mod v`.
    pub chain: Vec<usize>,
}

/// For every `n`, the unique column of `h` with ones at rows `n` and
/// `n + 1 mod rows`; fails unless such columns exist and are all distinct.
pub fn chain_columns(h: &SparseBinaryMatrix) -> Result<Vec<usize>, RaError> {
    let v = h.rows();
    let mut chain = Vec::with_capacity(v);
    let mut used = vec![false; h.cols()];
    for n in 0..v {
        let below = (n + 1) % v;
        let hits: Vec<usize> = h
            .row(n)
            .iter()
            .copied()
            .filter(|&c| h.column(c).binary_search(&below).is_ok())
            .collect();
        let &[c] = hits.as_slice() else {
            return Err(RaError::PropertyViolation(format!(
                "{} columns hold rows {n} and {below}",
                hits.len()
            )));
        };
        if used[c] {
            return Err(RaError::PropertyViolation(format!("column {c} repeats in the chain")));
        }
        used[c] = true;
        chain.push(c);
    }
    Ok(chain)
}

/// First 1-entry of `c` in column-major order whose distance to the next
/// entry of its column is a unit modulo the row count.
fn coprime_entry(c: &SparseBinaryMatrix) -> Result<(usize, usize, usize), RaError> {
    let v = c.rows();
    for y in 0..c.cols() {
        let col = c.column(y);
        for (i, &x) in col.iter().enumerate() {
            let next = col[(i + 1) % col.len()];
            let delta = (next + v - x) % v;
            if delta != 0 && gcd(delta as u64, v as u64) == 1 {
                return Ok((x, y, delta));
            }
        }
    }
    Err(RaError::NoCoprimeDelta)
}

/// Builds the permuted orbit matrix for `class_orbit` (an index into
/// [`class_orbits`]) and checks both chain properties.
pub fn crcbibd_chain(d: &Design, class_orbit: usize) -> Result<CrcChain, RaError> {
    let orbits = class_orbits(d)?;
    let classes = orbits
        .get(class_orbit)
        .ok_or(RaError::IndexOutOfRange {
            index: class_orbit,
            len: orbits.len(),
        })?
        .clone();
    let v = d.v();
    if classes.len() != d.k() {
        return Err(RaError::PropertyViolation(format!(
            "class orbit {class_orbit} has length {}, expected {}",
            classes.len(),
            d.k()
        )));
    }
    let res = d.resolution().expect("checked by class_orbits");
    let columns: Vec<usize> = classes.iter().flat_map(|&c| res.classes()[c].iter().copied()).collect();
    if columns.len() != v {
        return Err(RaError::PropertyViolation(format!(
            "orbit has {} blocks, expected {v}",
            columns.len()
        )));
    }
    let c = SparseBinaryMatrix::from_columns(v, columns.iter().map(|&b| d.blocks()[b].points().to_vec()).collect())?;
    let (x1, y1, delta) = coprime_entry(&c)?;
    let rows: Vec<usize> = (0..v).map(|n| (x1 + delta * n) % v).collect();
    let mut new_of_old = vec![0; v];
    for (n, &x) in rows.iter().enumerate() {
        new_of_old[x] = n;
    }
    let h2_hat = c.permute_rows(&new_of_old)?;
    let chain = chain_columns(&h2_hat)?;
    Ok(CrcChain {
        classes,
        columns,
        x1,
        y1,
        delta,
        rows,
        h2_hat,
        chain,
    })
}

fn build(d: &Design, class_orbit: usize, g1: Option<usize>, h1_classes: &[usize]) -> Result<RaParityCheck, RaError> {
    let v = d.v();
    if let Some(g1) = g1 {
        if g1 == 0 || gcd(g1 as u64, v as u64) != 1 {
            return Err(RaError::BadG1 { g1, modulus: v });
        }
    }
    let chain = crcbibd_chain(d, class_orbit)?;
    let res = d.resolution().expect("checked by class_orbits");
    check_indices(h1_classes, res.len(), &chain.classes)?;
    // final row of chain row n
    let pos: Vec<usize> = match g1 {
        Some(g1) => (0..v).map(|n| ((n + 1) * g1 + v - 1) % v).collect(),
        None => (0..v).collect(),
    };
    let mut final_of_old = vec![0; v];
    for (n, &x) in chain.rows.iter().enumerate() {
        final_of_old[x] = pos[n];
    }
    let mut h2_cols = vec![Vec::new(); v];
    for (n, &col) in chain.chain.iter().enumerate() {
        let p = pos[n];
        h2_cols[p] = match g1 {
            Some(_) => chain
                .h2_hat
                .column(col)
                .iter()
                .map(|&r| pos[r])
                .filter(|&r| r >= p)
                .collect(),
            None => [n, n + 1].into_iter().filter(|&r| r < v).collect(),
        };
    }
    let h1_cols = h1_classes
        .iter()
        .flat_map(|&c| res.classes()[c].iter())
        .map(|&b| d.blocks()[b].points().iter().map(|&x| final_of_old[x]).collect())
        .collect();
    let h1 = SparseBinaryMatrix::from_columns(v, h1_cols)?;
    let h2 = SparseBinaryMatrix::from_columns(v, h2_cols)?;
    let list = h1_classes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let head = match g1 {
        Some(g1) => format!("wqra crcbibd v={v} g1={g1}"),
        None => format!("sra crcbibd v={v}"),
    };
    RaParityCheck::new(
        h1,
        h2,
        format!(
            "{head} orbit={class_orbit} x1={} delta={} h1_classes={list}",
            chain.x1, chain.delta
        ),
    )
}

/// sRA code from a cyclically resolvable design: the class orbit becomes a
/// double diagonal after the row permutation `n -> x1 + delta * n`.
pub fn sra_from_crcbibd(d: &Design, class_orbit: usize, h1_classes: &[usize]) -> Result<RaParityCheck, RaError> {
    build(d, class_orbit, None, h1_classes)
}

/// Weight-`k` variant: chain row `n` goes to row `(n + 1) g1 - 1 mod v`, so
/// chain pairs sit `g1` apart; entries above the diagonal are removed.
pub fn wqra_from_crcbibd(
    d: &Design,
    class_orbit: usize,
    g1: usize,
    h1_classes: &[usize],
) -> Result<RaParityCheck, RaError> {
    build(d, class_orbit, Some(g1), h1_classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify::fixtures::ag23;
    use crate::designs::{parse_design, LoadOptions};
    use crate::matrices::{girth, Weight};
    use crate::ra::{h2_from_spec, Accumulator, AccumulatorSpec};

    fn crc39() -> Design {
        parse_design(
            include_str!("../../tests/fixtures/crcbibd39.design"),
            LoadOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn orbits_of_fixture() {
        let orbits = class_orbits(&crc39()).unwrap();
        let lens: Vec<usize> = orbits.iter().map(Vec::len).collect();
        assert_eq!(lens, vec![13, 3, 3]);
        assert_eq!(orbits[1], vec![13, 14, 15]);
    }

    #[test]
    fn chain_properties_hold() {
        let d = crc39();
        for orbit in [1, 2] {
            let chain = crcbibd_chain(&d, orbit).unwrap();
            assert_eq!(gcd(chain.delta as u64, 39), 1);
            assert_eq!(chain.rows[0], chain.x1);
            assert!(chain.h2_hat.column(chain.chain[0]).contains(&0));
            let mut sorted = chain.chain.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 39);
        }
        assert!(matches!(crcbibd_chain(&d, 0), Err(RaError::PropertyViolation(_))));
    }

    #[test]
    fn skips_non_coprime_distances() {
        // every distance in column 0 is 13
        let c = SparseBinaryMatrix::from_columns(39, vec![vec![0, 13, 26], vec![1, 2, 20]]).unwrap();
        assert_eq!(coprime_entry(&c).unwrap(), (1, 1, 1));
        let c = SparseBinaryMatrix::from_columns(39, vec![vec![0, 13, 26]]).unwrap();
        assert_eq!(coprime_entry(&c), Err(RaError::NoCoprimeDelta));
    }

    #[test]
    fn sra_is_double_diagonal() {
        let d = crc39();
        let h1: Vec<usize> = (0..13).collect();
        let ra = sra_from_crcbibd(&d, 1, &h1).unwrap();
        assert!(ra.h2().is_double_diagonal());
        assert_eq!(
            ra.accumulator(),
            &Accumulator::Spec(AccumulatorSpec::double_diagonal(39))
        );
        assert_eq!((ra.m(), ra.k()), (39, 169));
        assert_eq!(ra.h1().regularity().column, Weight::Constant(3));
        assert_eq!(ra.h1().regularity().row, Weight::Constant(13));
        assert!(girth(&ra.h()).unwrap() >= 6);
        assert_eq!(sra_from_crcbibd(&d, 1, &[14]).unwrap_err(), RaError::OrbitOverlap(14));
    }

    #[test]
    fn wqra_chain_distance() {
        let d = crc39();
        let ra = wqra_from_crcbibd(&d, 1, 2, &[]).unwrap();
        for j in 0..37 {
            assert!(ra.h2().column(j).contains(&(j + 2)), "column {j}");
        }
        let spec = ra.accumulator().spec().expect("regular accumulator");
        assert!(spec.s().contains(&2));
        assert_eq!(ra.h2(), &h2_from_spec(spec));
        assert_eq!(
            wqra_from_crcbibd(&d, 1, 3, &[]).unwrap_err(),
            RaError::BadG1 { g1: 3, modulus: 39 }
        );
    }

    #[test]
    fn unit_g1_keeps_every_entry_of_the_chain() {
        let d = crc39();
        let chain = crcbibd_chain(&d, 2).unwrap();
        let ra = wqra_from_crcbibd(&d, 2, 1, &[]).unwrap();
        let sra = sra_from_crcbibd(&d, 2, &[]).unwrap();
        for n in 0..39 {
            let full: Vec<usize> = chain
                .h2_hat
                .column(chain.chain[n])
                .iter()
                .copied()
                .filter(|&r| r >= n)
                .collect();
            assert_eq!(ra.h2().column(n), full.as_slice());
            assert!(sra.h2().column(n).iter().all(|r| full.contains(r)));
        }
    }

    #[test]
    fn rejects_non_cyclic_resolution() {
        assert!(matches!(
            sra_from_crcbibd(&ag23(), 0, &[]),
            Err(RaError::PropertyViolation(_))
        ));
        let no_res = crc39().without_resolution();
        assert!(matches!(class_orbits(&no_res), Err(RaError::Design(_))));
    }
}
