use super::{check_indices, RaError, RaParityCheck};
use crate::designs::Design;
use crate::matrices::SparseBinaryMatrix;

/// The last three resolution classes of a Kirkman triple system laid out as
/// a `3 x 3` grid of `m x m` shifted identities, `m = v / 3`.
///
/// Row group `g` holds points `g*m .. (g+1)*m`. Inside each tail class the
/// blocks are ordered by their point in group 0, so `shifts[c][g]` is the
/// circulant in row group `g` and tail class `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KtsTail {
    pub group_size: usize,
    /// Resolution class indices of the three tail classes.
    pub classes: [usize; 3],
    /// `columns[c][j]`: block index of column `j` of tail class `c`.
    pub columns: [Vec<usize>; 3],
    pub shifts: [[usize; 3]; 3],
}

impl KtsTail {
    /// Whether the entry of tail class `c` in row group `g` survives the
    /// zeroing of the `(2,0)`, `(0,1)` and `(1,2)` circulants.
    fn kept(c: usize, g: usize) -> bool {
        (c + 2) % 3 != g
    }
}

/// Validates the tail structure of `d`.
pub fn kts_tail(d: &Design) -> Result<KtsTail, RaError> {
    let bad = |msg: String| Err(RaError::NotKtsTail(msg));
    let v = d.v();
    if d.k() != 3 || !v.is_multiple_of(3) {
        return bad(format!("need k = 3 and 3 | v, got v={v} k={}", d.k()));
    }
    let Some(res) = d.resolution() else {
        return bad("design has no resolution".into());
    };
    if res.len() < 3 {
        return bad("fewer than three classes".into());
    }
    let m = v / 3;
    let n = res.len();
    let classes = [n - 3, n - 2, n - 1];
    let mut columns: [Vec<usize>; 3] = Default::default();
    let mut shifts = [[0; 3]; 3];
    for (c, &class) in classes.iter().enumerate() {
        // block containing point j of group 0, and its point in every group
        let mut by_point = vec![None; m];
        for &b in &res.classes()[class] {
            let pts = d.blocks()[b].points();
            if pts.iter().map(|&x| x / m).collect::<Vec<_>>() != [0, 1, 2] {
                return bad(format!("block {b} of class {class} is not transversal"));
            }
            by_point[pts[0]] = Some((b, [pts[0], pts[1] - m, pts[2] - 2 * m]));
        }
        let by_point: Vec<_> = match by_point.into_iter().collect::<Option<Vec<_>>>() {
            Some(x) => x,
            None => return bad(format!("class {class} misses a point of group 0")),
        };
        for g in 0..3 {
            let shift = by_point[0].1[g];
            if by_point.iter().enumerate().any(|(j, (_, p))| p[g] != (j + shift) % m) {
                return bad(format!("class {class} is not circulant in group {g}"));
            }
            shifts[c][g] = shift;
        }
        columns[c] = by_point.into_iter().map(|(b, _)| b).collect();
    }
    Ok(KtsTail {
        group_size: m,
        classes,
        columns,
        shifts,
    })
}

/// Row order and column order turning the zeroed tail into a double diagonal.
struct Chain {
    /// `rows[i]`: original point placed on row `i`.
    rows: Vec<usize>,
    /// `(tail class, column)` placed at `H2` column `i`.
    cols: Vec<(usize, usize)>,
}

fn follow_chain(d: &Design, tail: &KtsTail) -> Result<Chain, RaError> {
    let v = d.v();
    let mut incident: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); v];
    for c in 0..3 {
        for (j, &b) in tail.columns[c].iter().enumerate() {
            let kept: Vec<usize> = d.blocks()[b]
                .points()
                .iter()
                .copied()
                .filter(|&x| KtsTail::kept(c, x / tail.group_size))
                .collect();
            incident[kept[0]].push((kept[1], c, j));
            incident[kept[1]].push((kept[0], c, j));
        }
    }
    let mut rows = vec![0];
    let mut cols = Vec::with_capacity(v);
    let mut used = vec![false; v];
    used[0] = true;
    let mut prev: Option<(usize, usize)> = None;
    let mut at = 0;
    loop {
        let mut options: Vec<_> = incident[at].iter().filter(|&&(_, c, j)| Some((c, j)) != prev).collect();
        options.sort_by_key(|&&(_, c, j)| tail.columns[c][j]);
        let &&(next, c, j) = options
            .first()
            .ok_or_else(|| RaError::ChainBroken(format!("point {at} is isolated")))?;
        cols.push((c, j));
        if next == 0 {
            break;
        }
        if used[next] {
            return Err(RaError::ChainBroken(format!("point {next} revisited")));
        }
        used[next] = true;
        rows.push(next);
        prev = Some((c, j));
        at = next;
    }
    if rows.len() != v {
        return Err(RaError::ChainBroken(format!(
            "cycle through point 0 covers {} of {v} points",
            rows.len()
        )));
    }
    Ok(Chain { rows, cols })
}

fn build(d: &Design, h1_classes: &[usize], keep_all: bool) -> Result<RaParityCheck, RaError> {
    let tail = kts_tail(d)?;
    let res = d.resolution().expect("checked by kts_tail");
    check_indices(h1_classes, res.len(), &tail.classes)?;
    let chain = follow_chain(d, &tail)?;
    let v = d.v();
    let mut new_row = vec![0; v];
    for (i, &x) in chain.rows.iter().enumerate() {
        new_row[x] = i;
    }
    let h1_cols = h1_classes
        .iter()
        .flat_map(|&c| res.classes()[c].iter())
        .map(|&b| d.blocks()[b].points().iter().map(|&x| new_row[x]).collect())
        .collect();
    let h2_cols = chain
        .cols
        .iter()
        .enumerate()
        .map(|(i, &(c, j))| {
            d.blocks()[tail.columns[c][j]]
                .points()
                .iter()
                .filter(|&&x| keep_all || KtsTail::kept(c, x / tail.group_size))
                .map(|&x| new_row[x])
                .filter(|&r| r >= i)
                .collect()
        })
        .collect();
    let h1 = SparseBinaryMatrix::from_columns(v, h1_cols)?;
    let h2 = SparseBinaryMatrix::from_columns(v, h2_cols)?;
    let list = h1_classes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let kind = if keep_all { "w3ra" } else { "sra" };
    RaParityCheck::new(h1, h2, format!("{kind} kts v={v} h1_classes={list}"))
}

/// sRA code from a Kirkman triple system: the tail classes with the `(2,0)`,
/// `(0,1)` and `(1,2)` circulants zeroed become a double diagonal under a row
/// permutation applied to the whole matrix; `H1` holds `h1_classes`.
pub fn sra_from_kts(d: &Design, h1_classes: &[usize]) -> Result<RaParityCheck, RaError> {
    build(d, h1_classes, false)
}

/// Same permutations as [`sra_from_kts`] with the zeroed entries kept and
/// entries above the diagonal removed.
pub fn w3ra_from_kts(d: &Design, h1_classes: &[usize]) -> Result<RaParityCheck, RaError> {
    build(d, h1_classes, true)
}
