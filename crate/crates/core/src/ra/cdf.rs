use super::{check_indices, RaError, RaParityCheck};
use crate::designs::{find_base_block_with_difference, Block, DesignError, DifferenceFamily};
use crate::matrices::SparseBinaryMatrix;

/// The `v x v` circulant whose column `j` is `block + j`.
fn circulant(block: &Block, v: usize) -> Vec<Vec<usize>> {
    (0..v).map(|j| block.translate(j, v).points().to_vec()).collect()
}

fn h1_from_orbits(f: &DifferenceFamily, orbits: &[usize]) -> SparseBinaryMatrix {
    let v = f.modulus;
    let cols = orbits.iter().flat_map(|&i| circulant(&f.base_blocks[i], v)).collect();
    SparseBinaryMatrix::from_columns(v, cols).expect("residues are in range")
}

/// Lower point `a` of the unique ordered pair `(a, a + d)` in `block`.
fn anchor(block: &Block, d: usize, v: usize) -> usize {
    block
        .points()
        .iter()
        .copied()
        .find(|&a| block.contains((a + d) % v))
        .expect("block generates the difference")
}

/// Column `i` of `H2` is the translate of `block` putting the anchor on row
/// `i`, cut below the diagonal; `keep` filters the offsets from the anchor.
fn h2_from_block(block: &Block, d: usize, v: usize, keep: impl Fn(usize) -> bool) -> SparseBinaryMatrix {
    let a = anchor(block, d, v);
    let mut offsets: Vec<usize> = block
        .points()
        .iter()
        .map(|&b| (b + v - a) % v)
        .filter(|&o| keep(o))
        .collect();
    offsets.sort_unstable();
    let cols = (0..v)
        .map(|i| offsets.iter().map(|&o| i + o).filter(|&r| r < v).collect())
        .collect();
    SparseBinaryMatrix::from_columns(v, cols).expect("rows in range")
}

fn lookup(f: &DifferenceFamily, d: usize) -> Result<usize, RaError> {
    match find_base_block_with_difference(f, d) {
        Ok(i) => Ok(i),
        Err(DesignError::DifferenceNotFound(_) | DesignError::Precondition(_)) if d == 1 => {
            Err(RaError::NoUnitDifference)
        }
        Err(DesignError::DifferenceNotFound(_) | DesignError::Precondition(_)) => Err(RaError::DifferenceAbsent(d)),
        Err(e) => Err(e.into()),
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// sRA code from a cyclic difference family: `H2` is the orbit of the first
/// base block with difference 1, reduced to its consecutive pairs; `H1` is
/// the concatenation of the circulants of `h1_orbits`.
pub fn sra_from_cdf(f: &DifferenceFamily, h1_orbits: &[usize]) -> Result<RaParityCheck, RaError> {
    f.check()?;
    let v = f.modulus;
    let t = lookup(f, 1)?;
    check_indices(h1_orbits, f.base_blocks.len(), &[t])?;
    let h2 = h2_from_block(&f.base_blocks[t], 1, v, |o| o <= 1);
    RaParityCheck::new(
        h1_from_orbits(f, h1_orbits),
        h2,
        format!("sra cdf v={v} h2_orbit={t} h1_orbits={}", list(h1_orbits)),
    )
}

/// Weight-`k` RA code: the orbit of the first base block with difference
/// `g1`, with everything above the diagonal deleted.
pub fn wqra_from_cdf(f: &DifferenceFamily, g1: usize, h1_orbits: &[usize]) -> Result<RaParityCheck, RaError> {
    f.check()?;
    let v = f.modulus;
    if g1 == 0 || g1 >= v {
        return Err(RaError::DifferenceAbsent(g1));
    }
    let s = lookup(f, g1)?;
    check_indices(h1_orbits, f.base_blocks.len(), &[s])?;
    let h2 = h2_from_block(&f.base_blocks[s], g1, v, |_| true);
    RaParityCheck::new(
        h1_from_orbits(f, h1_orbits),
        h2,
        format!("wqra cdf v={v} g1={g1} h2_orbit={s} h1_orbits={}", list(h1_orbits)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{buratti_cdf, netto_cdf, FamilyKind};
    use crate::matrices::{girth, Weight};
    use crate::ra::{h2_from_spec, Accumulator, AccumulatorSpec};

    #[test]
    fn netto_19_sra() {
        let f = netto_cdf(19).unwrap();
        let t = find_base_block_with_difference(&f, 1).unwrap();
        let others: Vec<usize> = (0..f.base_blocks.len()).filter(|&i| i != t).collect();
        let ra = sra_from_cdf(&f, &others).unwrap();
        assert_eq!((ra.m(), ra.k()), (19, 38));
        assert_eq!(ra.h2(), &h2_from_spec(&AccumulatorSpec::double_diagonal(19)));
        assert_eq!(
            ra.accumulator(),
            &Accumulator::Spec(AccumulatorSpec::double_diagonal(19))
        );
        assert_eq!(ra.h1().regularity().column, Weight::Constant(3));
        assert_eq!(girth(ra.h1()), Some(6));
        assert_eq!(girth(&ra.h()), Some(6));
        assert!(matches!(sra_from_cdf(&f, &[t]), Err(RaError::OrbitOverlap(_))));
    }

    #[test]
    fn netto_7_h2_only() {
        let ra = sra_from_cdf(&netto_cdf(7).unwrap(), &[]).unwrap();
        assert_eq!((ra.m(), ra.k()), (7, 0));
        assert!(ra.h2().is_double_diagonal());
    }

    #[test]
    fn unit_difference_only_in_short_orbit() {
        // the short orbit {0,1,2} of Z_3 carries 1, there are no full orbits
        let f = DifferenceFamily::new(3, 3, vec![], FamilyKind::Cdf, true);
        assert_eq!(sra_from_cdf(&f, &[]).unwrap_err(), RaError::NoUnitDifference);
    }

    #[test]
    fn netto_13_w3ra() {
        let f = netto_cdf(13).unwrap();
        let ra = wqra_from_cdf(&f, 1, &[]).unwrap();
        let spec = ra.accumulator().spec().expect("regular accumulator").clone();
        assert_eq!(spec.q(), 3);
        assert_eq!(spec.s()[0], 1);
        assert_eq!(ra.h2(), &h2_from_spec(&spec));
        let w = ra.h2().column_weights();
        assert_eq!(w.iter().filter(|&&x| x == 3).count(), 13 - spec.s()[1]);
        assert_eq!(w[12], 1);
    }

    #[test]
    fn buratti_uses_last_block() {
        let f = buratti_cdf(13, 4).unwrap();
        let ra = wqra_from_cdf(&f, 1, &[]).unwrap();
        assert_eq!(find_base_block_with_difference(&f, 1).unwrap(), f.base_blocks.len() - 1);
        assert!(ra
            .provenance()
            .contains(&format!("h2_orbit={}", f.base_blocks.len() - 1)));
        assert_eq!(ra.q(), 4);
    }

    #[test]
    fn out_of_range_difference() {
        let f = netto_cdf(13).unwrap();
        assert_eq!(wqra_from_cdf(&f, 13, &[]).unwrap_err(), RaError::DifferenceAbsent(13));
        assert_eq!(wqra_from_cdf(&f, 0, &[]).unwrap_err(), RaError::DifferenceAbsent(0));
    }

    #[test]
    fn wqra_realizes_every_difference() {
        let f = netto_cdf(31).unwrap();
        for g1 in 1..31 {
            let ra = wqra_from_cdf(&f, g1, &[]).unwrap();
            let spec = ra.accumulator().spec().expect("regular accumulator");
            assert!(spec.s().contains(&g1));
            assert_eq!(ra.h2(), &h2_from_spec(spec));
        }
    }
}
