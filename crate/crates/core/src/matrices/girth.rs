use std::collections::VecDeque;

use super::SparseBinaryMatrix;

/// A node of the Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TannerNode {
    Variable(usize),
    Check(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthReport {
    /// `None` when the Tanner graph is a forest.
    pub girth: Option<usize>,
    /// A shortest cycle, alternating variable and check nodes.
    pub cycle: Vec<TannerNode>,
}

/// Length of the shortest cycle in the Tanner graph of `m`.
pub fn girth(m: &SparseBinaryMatrix) -> Option<usize> {
    girth_with_witness(m).girth
}

/// Breadth-first search from every variable node, cut off once no shorter
/// cycle than the best so far can appear.
pub fn girth_with_witness(m: &SparseBinaryMatrix) -> GirthReport {
    let n = m.cols();
    let total = n + m.rows();
    // node ids: variables 0..n, checks n..n+rows
    let neighbours = |u: usize| -> &[usize] {
        if u < n {
            m.column(u)
        } else {
            m.row(u - n)
        }
    };
    let id_of = |u: usize, local: usize| if u < n { local + n } else { local };

    let mut best = usize::MAX;
    let mut best_cycle = Vec::new();
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();

    for s in 0..n {
        for &u in &touched {
            dist[u] = usize::MAX;
            parent[u] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &local in neighbours(u) {
                let w = id_of(u, local);
                if w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    if len < best {
                        best = len;
                        best_cycle = close_cycle(u, w, &parent);
                        if 2 * dist[u] >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
    }

    let to_node = |u: usize| {
        if u < n {
            TannerNode::Variable(u)
        } else {
            TannerNode::Check(u - n)
        }
    };
    GirthReport {
        girth: (best != usize::MAX).then_some(best),
        cycle: best_cycle.into_iter().map(to_node).collect(),
    }
}

/// Joins the tree paths from `u` and `w` back to their common ancestor.
fn close_cycle(u: usize, w: usize, parent: &[usize]) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path(u);
    let pw = path(w);
    // strip the shared tail above the meeting point
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pu[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    cycle
}
