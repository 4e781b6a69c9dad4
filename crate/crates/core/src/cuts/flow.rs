//! Unit-capacity max flow between vertex sets, minimum cuts and relevant sets.

use crate::error::{Error, Result};
use crate::graph::{mask, EdgeId, Graph, VertexId};
use std::collections::VecDeque;

const BIG: u64 = u64::MAX / 4;

/// Residual network of an undirected graph with super source `n` and super sink
/// `n + 1`. Arc `2e` runs `u -> v` for edge `e = (u, v)`, arc `2e + 1` the other way.
struct Network {
    n: usize,
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl Network {
    fn new(g: &Graph, y1: &[bool], y2: &[bool]) -> Network {
        let n = g.n();
        let mut net = Network { n, head: vec![Vec::new(); n + 2], to: Vec::new(), cap: Vec::new() };
        for &(u, v) in g.edges() {
            // Both arcs carry capacity 1; pushing flow one way frees the other.
            net.arc_pair(u, v, 1, 1);
        }
        for v in 0..n {
            if y1[v] {
                net.arc_pair(n, v, BIG, 0);
            }
            if y2[v] {
                net.arc_pair(v, n + 1, BIG, 0);
            }
        }
        net
    }

    fn arc_pair(&mut self, u: usize, v: usize, c_uv: u64, c_vu: u64) {
        let id = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([c_uv, c_vu]);
        self.head[u].push(id);
        self.head[v].push(id + 1);
    }

    fn source(&self) -> usize {
        self.n
    }

    fn sink(&self) -> usize {
        self.n + 1
    }

    /// Edmonds-Karp. Returns the flow value.
    fn max_flow(&mut self) -> u64 {
        let (s, t) = (self.source(), self.sink());
        let mut total = 0;
        loop {
            let mut parent = vec![usize::MAX; self.n + 2];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && parent[w] == usize::MAX && w != s {
                        parent[w] = a;
                        if w == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(w);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                return total;
            }
            let mut push = BIG;
            let mut v = t;
            while v != s {
                let a = parent[v];
                push = push.min(self.cap[a]);
                v = self.to[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                v = self.to[a ^ 1];
            }
            total += push;
            if total >= BIG {
                return total;
            }
        }
    }

    /// Vertices reachable from the source in the residual network.
    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n + 2];
        let s = self.source();
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.head[u] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Vertices that can reach the sink in the residual network.
    fn backward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n + 2];
        let t = self.sink();
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            // Arc a enters u; its reverse a ^ 1 leaves u. Residual arc w -> u is a ^ 1's partner.
            for &a in &self.head[u] {
                let w = self.to[a];
                if self.cap[a ^ 1] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub value: usize,
    pub cut: Vec<EdgeId>,
    pub source_side: Vec<VertexId>,
}

fn check_disjoint(n: usize, y1: &[VertexId], y2: &[VertexId]) -> Result<(Vec<bool>, Vec<bool>)> {
    let (m1, m2) = (mask(n, y1), mask(n, y2));
    if (0..n).any(|v| m1[v] && m2[v]) {
        return Err(Error::Precondition("cut sides must be disjoint".into()));
    }
    Ok((m1, m2))
}

/// `λ(Y1, Y2)`: the fewest edges whose deletion separates `Y1` from `Y2`, with
/// the minimum cut whose source side is as small as possible. An empty side
/// gives value 0.
pub fn min_cut(g: &Graph, y1: &[VertexId], y2: &[VertexId]) -> Result<MinCut> {
    let (m1, m2) = check_disjoint(g.n(), y1, y2)?;
    let mut net = Network::new(g, &m1, &m2);
    let value = net.max_flow();
    if value >= BIG {
        return Err(Error::Internal("adjacent vertex sets have unbounded cut".into()));
    }
    let reach = net.forward_reachable();
    let source_side: Vec<_> = (0..g.n()).filter(|&v| reach[v]).collect();
    let cut = boundary(g, &reach[..g.n()]);
    debug_assert_eq!(cut.len() as u64, value);
    Ok(MinCut { value: value as usize, cut, source_side })
}

pub fn lambda(g: &Graph, y1: &[VertexId], y2: &[VertexId]) -> usize {
    if y1.is_empty() || y2.is_empty() {
        return 0;
    }
    min_cut(g, y1, y2).expect("disjoint sides").value
}

/// Edges with exactly one endpoint in `side`, i.e. `δ(side)`.
pub fn boundary(g: &Graph, side: &[bool]) -> Vec<EdgeId> {
    (0..g.m())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            side[u] != side[v]
        })
        .collect()
}

/// `d(Y) = |δ(Y)|`.
pub fn degree_of_set(g: &Graph, set: &[VertexId]) -> usize {
    boundary(g, &mask(g.n(), set)).len()
}

/// The unique maximum set `Y3 ⊇ Y1` avoiding `Y2` with `d(Y3) = λ(Y1, Y2)`.
///
/// The graph must be connected. `Y2` may be empty, in which case the whole
/// vertex set is returned.
pub fn relevant_set(g: &Graph, y1: &[VertexId], y2: &[VertexId]) -> Result<Vec<VertexId>> {
    if y1.is_empty() {
        return Err(Error::Precondition("relevant set needs a nonempty source side".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("relevant set requires a connected graph".into()));
    }
    let (m1, m2) = check_disjoint(g.n(), y1, y2)?;
    let mut net = Network::new(g, &m1, &m2);
    net.max_flow();
    let back = net.backward_reachable();
    Ok((0..g.n()).filter(|&v| !back[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e)
    }

    #[test]
    fn path_cut() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]);
        let c = min_cut(&g, &[0], &[2]).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!(c.source_side, vec![0]);
        assert_eq!(c.cut, vec![0]);
    }

    #[test]
    fn k4_cut() {
        assert_eq!(min_cut(&k(4), &[0], &[1]).unwrap().value, 3);
        assert_eq!(lambda(&k(5), &[0, 1], &[2]), 4);
    }

    #[test]
    fn separated_sides() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]);
        let c = min_cut(&g, &[0], &[3]).unwrap();
        assert_eq!((c.value, c.cut.len()), (0, 0));
    }

    #[test]
    fn overlapping_sides_rejected() {
        assert!(min_cut(&k(3), &[0, 1], &[1]).is_err());
    }

    #[test]
    fn relevant_sets() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(relevant_set(&path, &[0], &[2]).unwrap(), vec![0, 1]);
        let star = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(relevant_set(&star, &[1], &[2]).unwrap(), vec![0, 1, 3]);
        let fork = Graph::new(4, vec![(0, 1), (1, 2), (1, 3)]);
        assert_eq!(relevant_set(&fork, &[0], &[2, 3]).unwrap(), vec![0]);
        assert_eq!(relevant_set(&path, &[0], &[]).unwrap(), vec![0, 1, 2]);
        assert!(relevant_set(&Graph::new(2, vec![]), &[0], &[1]).is_err());
    }
}
