use std::collections::VecDeque;
use std::fmt;

use super::BitMatrix;

/// Cycle length in a Tanner graph. `Finite` sorts before `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthReport {
    pub global: Girth,
    pub per_variable: Vec<Girth>,
}

/// Shortest cycle through variable `v`. Nodes `0..cols` are variables and
/// `cols..cols+rows` are checks; each node is tagged with the edge out of
/// `v` it was reached through, and an edge joining two tags closes a cycle.
fn local_girth(m: &BitMatrix, v: usize, dist: &mut [usize], branch: &mut [usize]) -> Girth {
    const UNSEEN: usize = usize::MAX;
    let n = m.cols();
    dist.fill(UNSEEN);
    let mut queue = VecDeque::new();
    dist[v] = 0;
    branch[v] = UNSEEN;
    for (b, &c) in m.col(v).iter().enumerate() {
        dist[n + c] = 1;
        branch[n + c] = b;
        queue.push_back(n + c);
    }
    let mut best = usize::MAX;
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] >= best {
            break;
        }
        let neighbours: Box<dyn Iterator<Item = usize>> =
            if u >= n { Box::new(m.row(u - n).iter().copied()) } else { Box::new(m.col(u).iter().map(|&c| n + c)) };
        for w in neighbours {
            if w == v {
                continue;
            }
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                branch[w] = branch[u];
                queue.push_back(w);
            } else if branch[w] != branch[u] {
                best = best.min(dist[u] + dist[w] + 1);
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Per-variable and global girth of the Tanner graph of `m`.
pub fn girth(m: &BitMatrix) -> GirthReport {
    let total = m.cols() + m.rows();
    let mut dist = vec![0; total];
    let mut branch = vec![0; total];
    let per_variable: Vec<Girth> = (0..m.cols()).map(|v| local_girth(m, v, &mut dist, &mut branch)).collect();
    let global = per_variable.iter().copied().min().unwrap_or(Girth::Infinite);
    GirthReport { global, per_variable }
}
