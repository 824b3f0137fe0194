//! Exact-cover search for resolutions.
//!
//! Classes are filled one at a time, always covering the smallest uncovered
//! point with the lowest-index unused block that fits. Each new class starts
//! with the lowest-index unused block through point 0, which removes the
//! class-order symmetry.

use std::collections::HashMap;

use super::{verify_resolution, Block, Design, DesignError, Resolution};

/// Default node budget for the resolution searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

struct Search<'a> {
    d: &'a Design,
    point_blocks: Vec<Vec<usize>>,
    used: Vec<bool>,
    cover: Vec<bool>,
    class: Vec<usize>,
    classes: Vec<Vec<usize>>,
    per_class: usize,
    shift: Option<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a Design, shift: Option<Vec<usize>>, budget: u64) -> Self {
        let mut point_blocks = vec![Vec::new(); d.v()];
        for (i, b) in d.blocks().iter().enumerate() {
            for &x in b.points() {
                point_blocks[x].push(i);
            }
        }
        Self {
            d,
            point_blocks,
            used: vec![false; d.b()],
            cover: vec![false; d.v()],
            class: Vec::new(),
            classes: Vec::new(),
            per_class: d.v() / d.k(),
            shift,
            nodes: 0,
            budget,
        }
    }

    fn fits(&self, bi: usize) -> bool {
        !self.used[bi] && self.d.blocks()[bi].points().iter().all(|&x| !self.cover[x])
    }

    fn mark(&mut self, bi: usize, on: bool) {
        self.used[bi] = on;
        for &x in self.d.blocks()[bi].points() {
            self.cover[x] = on;
        }
    }

    /// `Some(true)` solved, `Some(false)` exhausted, `None` out of budget.
    fn solve(&mut self) -> Option<bool> {
        if self.used.iter().all(|&u| u) {
            return Some(true);
        }
        let point = self.cover.iter().position(|&c| !c).expect("class not full");
        let starting = self.class.is_empty();
        let candidates: Vec<usize> = self.point_blocks[point]
            .iter()
            .copied()
            .filter(|&bi| self.fits(bi))
            .take(if starting { 1 } else { usize::MAX })
            .collect();
        for bi in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.mark(bi, true);
            self.class.push(bi);
            let outcome = if self.class.len() == self.per_class {
                self.close_class()
            } else {
                self.solve()
            };
            self.class.pop();
            self.mark(bi, false);
            match outcome {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }

    /// Commits the full current class (and its shift orbit when searching
    /// for a cyclic resolution) and recurses on a fresh class.
    fn close_class(&mut self) -> Option<bool> {
        let class = std::mem::take(&mut self.class);
        self.cover.iter_mut().for_each(|c| *c = false);

        let mut orbit = vec![class.clone()];
        let mut ok = true;
        if let Some(shift) = &self.shift {
            let mut sorted = class.clone();
            sorted.sort_unstable();
            let mut cur = class.clone();
            loop {
                cur = cur.iter().map(|&bi| shift[bi]).collect();
                let mut key = cur.clone();
                key.sort_unstable();
                if key == sorted {
                    break;
                }
                if cur.iter().any(|&bi| self.used[bi]) {
                    ok = false;
                    break;
                }
                for &bi in &cur {
                    self.used[bi] = true;
                }
                orbit.push(cur.clone());
            }
        }
        let outcome = if ok {
            let before = self.classes.len();
            self.classes.extend(orbit.iter().cloned());
            let r = self.solve();
            if r != Some(true) {
                self.classes.truncate(before);
            }
            r
        } else {
            Some(false)
        };
        for shifted in &orbit[1..] {
            for &bi in shifted {
                self.used[bi] = false;
            }
        }
        // restore the class as the caller left it
        for &bi in &class {
            for &x in self.d.blocks()[bi].points() {
                self.cover[x] = true;
            }
        }
        self.class = class;
        outcome
    }
}

fn check_divisible(d: &Design) -> Result<(), DesignError> {
    if d.k() == 0 || !d.v().is_multiple_of(d.k()) {
        return Err(DesignError::Precondition(format!(
            "k = {} does not divide v = {}",
            d.k(),
            d.v()
        )));
    }
    Ok(())
}

fn run(d: &Design, shift: Option<Vec<usize>>, budget: u64) -> Result<Resolution, DesignError> {
    let mut search = Search::new(d, shift, budget);
    match search.solve() {
        Some(true) => {}
        Some(false) => return Err(DesignError::Infeasible),
        None => return Err(DesignError::Timeout { budget }),
    }
    let res = Resolution::new(search.classes);
    let check = d.clone().without_resolution().with_resolution(res.clone())?;
    if !verify_resolution(&check)?.ok {
        return Err(DesignError::Infeasible);
    }
    Ok(res)
}

/// Partitions the blocks of `d` into parallel classes.
pub fn find_resolution(d: &Design, budget: u64) -> Result<Resolution, DesignError> {
    check_divisible(d)?;
    run(d, None, budget)
}

/// Finds a resolution that translation by one maps onto itself. Classes are
/// returned orbit by orbit, each orbit as `C, C+1, C+2, ...`.
///
/// A design that is not shift-invariant has no such resolution.
pub fn find_cyclic_resolution(d: &Design, budget: u64) -> Result<Resolution, DesignError> {
    check_divisible(d)?;
    let index: HashMap<&Block, usize> = d.blocks().iter().enumerate().map(|(i, b)| (b, i)).collect();
    if index.len() != d.b() {
        return Err(DesignError::Infeasible);
    }
    let mut shift = Vec::with_capacity(d.b());
    for b in d.blocks() {
        match index.get(&b.translate(1, d.v())) {
            Some(&j) => shift.push(j),
            None => return Err(DesignError::Infeasible),
        }
    }
    run(d, Some(shift), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify::fixtures::{ag23, fano};
    use crate::designs::{expand_cdf_to_design, netto_cdf, verify_bibd, DifferenceFamily, FamilyKind};

    fn with(d: &Design, res: Resolution) -> Design {
        d.clone().without_resolution().with_resolution(res).unwrap()
    }

    fn shift_closed(d: &Design, res: &Resolution) -> bool {
        let v = d.v();
        let mut sets: Vec<Vec<Block>> = res
            .classes()
            .iter()
            .map(|c| {
                let mut s: Vec<Block> = c.iter().map(|&i| d.blocks()[i].clone()).collect();
                s.sort();
                s
            })
            .collect();
        sets.sort();
        let mut shifted: Vec<Vec<Block>> = sets
            .iter()
            .map(|c| {
                let mut s: Vec<Block> = c.iter().map(|b| b.translate(1, v)).collect();
                s.sort();
                s
            })
            .collect();
        shifted.sort();
        sets == shifted
    }

    #[test]
    fn recovers_affine_plane() {
        let d = ag23().without_resolution();
        let res = find_resolution(&d, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(res.len(), 4);
        assert!(verify_resolution(&with(&d, res)).unwrap().ok);
    }

    #[test]
    fn fano_fails_precondition() {
        assert!(matches!(
            find_resolution(&fano(), 1000),
            Err(DesignError::Precondition(_))
        ));
    }

    #[test]
    fn sts9_has_four_classes() {
        // STS(9) written as an arbitrary relabelling of AG(2,3)
        let perm = [4usize, 7, 1, 0, 8, 3, 6, 2, 5];
        let lists: Vec<Vec<usize>> = ag23()
            .blocks()
            .iter()
            .rev()
            .map(|b| b.points().iter().map(|&x| perm[x]).collect())
            .collect();
        let d = Design::from_point_lists(9, 3, &lists).unwrap();
        assert!(verify_bibd(&d).ok);
        let res = find_resolution(&d, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(res.len(), 4);
        assert!(verify_resolution(&with(&d, res)).unwrap().ok);
    }

    #[test]
    fn non_cyclic_plane_has_no_cyclic_resolution() {
        let d = ag23().without_resolution();
        assert_eq!(find_cyclic_resolution(&d, 10_000), Err(DesignError::Infeasible));
    }

    #[test]
    fn cyclic_sts15() {
        // CDF(15,3,1) with its short orbit
        let f = DifferenceFamily::new(
            15,
            3,
            vec![Block::new([0, 1, 4], 15).unwrap(), Block::new([0, 2, 8], 15).unwrap()],
            FamilyKind::Cdf,
            true,
        );
        let d = expand_cdf_to_design(&f).unwrap();
        match find_cyclic_resolution(&d, DEFAULT_NODE_BUDGET) {
            Ok(res) => {
                assert!(verify_resolution(&with(&d, res.clone())).unwrap().ok);
                assert!(shift_closed(&d, &res));
            }
            Err(e) => assert_eq!(e, DesignError::Infeasible),
        }
    }

    #[test]
    fn budget_exhaustion() {
        let d = expand_cdf_to_design(&netto_cdf(13).unwrap()).unwrap();
        assert!(matches!(find_resolution(&d, 1000), Err(DesignError::Precondition(_))));
        let d = ag23().without_resolution();
        assert_eq!(find_resolution(&d, 1), Err(DesignError::Timeout { budget: 1 }));
    }
}
