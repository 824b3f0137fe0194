use super::{Design, DesignError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibdReport {
    /// Every pair of distinct points lies in exactly one block and
    /// `b k = v r`.
    pub ok: bool,
    /// `lambda_histogram[l]` is the number of point pairs covered `l` times.
    pub lambda_histogram: Vec<usize>,
    /// Common replication number, `None` when points disagree.
    pub r: Option<usize>,
    pub b: usize,
    /// First pair with the wrong coverage.
    pub first_bad_pair: Option<(usize, usize, usize)>,
}

/// Counts the coverage of all `C(v, 2)` point pairs.
pub fn verify_bibd(d: &Design) -> BibdReport {
    let v = d.v();
    let mut cover = vec![0usize; v * v];
    for b in d.blocks() {
        let pts = b.points();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                cover[x * v + y] += 1;
            }
        }
    }
    let mut hist = Vec::new();
    let mut first_bad = None;
    for x in 0..v {
        for y in x + 1..v {
            let c = cover[x * v + y];
            if hist.len() <= c {
                hist.resize(c + 1, 0);
            }
            hist[c] += 1;
            if c != 1 && first_bad.is_none() {
                first_bad = Some((x, y, c));
            }
        }
    }
    let rep = d.replication();
    let r = match rep.first() {
        Some(&r0) if rep.iter().all(|&x| x == r0) => Some(r0),
        _ => None,
    };
    let counts_ok = r.is_some_and(|r| d.b() * d.k() == v * r);
    BibdReport {
        ok: v >= 2 && first_bad.is_none() && counts_ok,
        lambda_histogram: hist,
        r,
        b: d.b(),
        first_bad_pair: first_bad,
    }
}

/// A point that a class misses or covers more than once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDefect {
    pub class: usize,
    pub point: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub ok: bool,
    pub classes: usize,
    /// Every block belongs to exactly one class.
    pub partitions_blocks: bool,
    pub defects: Vec<ClassDefect>,
}

/// Checks that every class covers each point exactly once and that the
/// classes partition the blocks.
pub fn verify_resolution(d: &Design) -> Result<ResolutionReport, DesignError> {
    let res = d.resolution().ok_or(DesignError::MissingResolution)?;
    let mut defects = Vec::new();
    let mut used = vec![0usize; d.b()];
    for (ci, class) in res.classes().iter().enumerate() {
        let mut cover = vec![0usize; d.v()];
        for &bi in class {
            used[bi] += 1;
            for &x in d.blocks()[bi].points() {
                cover[x] += 1;
            }
        }
        defects.extend(
            cover
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 1)
                .map(|(point, &count)| ClassDefect {
                    class: ci,
                    point,
                    count,
                }),
        );
    }
    let partitions_blocks = used.iter().all(|&u| u == 1);
    Ok(ResolutionReport {
        ok: defects.is_empty() && partitions_blocks,
        classes: res.len(),
        partitions_blocks,
        defects,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::designs::{Design, Resolution};

    pub fn fano() -> Design {
        Design::from_point_lists(
            7,
            3,
            &[
                vec![0, 1, 3],
                vec![1, 2, 4],
                vec![2, 3, 5],
                vec![3, 4, 6],
                vec![4, 5, 0],
                vec![5, 6, 1],
                vec![6, 0, 2],
            ],
        )
        .unwrap()
    }

    /// Lines of AG(2,3) with the point `(x, y)` labelled `3x + y`, grouped by
    /// direction: slopes 0, 1, 2, then the vertical lines.
    pub fn ag23() -> Design {
        let mut lists = Vec::new();
        let mut classes = Vec::new();
        for slope in 0..3 {
            let mut class = Vec::new();
            for c in 0..3 {
                class.push(lists.len());
                lists.push((0..3).map(|x| 3 * x + (slope * x + c) % 3).collect());
            }
            classes.push(class);
        }
        let mut class = Vec::new();
        for x in 0..3 {
            class.push(lists.len());
            lists.push((0..3).map(|y| 3 * x + y).collect());
        }
        classes.push(class);
        Design::from_point_lists(9, 3, &lists)
            .unwrap()
            .with_resolution(Resolution::new(classes))
            .unwrap()
    }
}
