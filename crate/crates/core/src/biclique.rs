//! Distance of a demand graph to an extended biclique.

use crate::graph::VertexId;
use crate::instance::DemandGraph;

/// Partition of `V(H)` into `B1, B2, I, X` such that `H - X` is the complete
/// bipartite graph between `B1` and `B2` plus the isolated vertices `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueDecomposition {
    pub b1: Vec<VertexId>,
    pub b2: Vec<VertexId>,
    pub i: Vec<VertexId>,
    pub x: Vec<VertexId>,
}

impl BicliqueDecomposition {
    pub fn mu(&self) -> usize {
        self.x.len()
    }
}

/// Tries to split `H - X` into an extended biclique. `removed` is indexed by
/// position in `h.vertices`.
fn split(h: &DemandGraph, removed: &[bool]) -> Option<BicliqueDecomposition> {
    let pos = |v: VertexId| h.vertices.binary_search(&v).unwrap();
    let k = h.vertices.len();
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in &h.edges {
        let (a, b) = (pos(u), pos(v));
        if !removed[a] && !removed[b] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut side = vec![u8::MAX; k];
    let (mut b1, mut b2, mut iso, mut x) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut first: Option<usize> = None;
    for s in 0..k {
        if removed[s] {
            x.push(h.vertices[s]);
            continue;
        }
        if adj[s].is_empty() {
            iso.push(h.vertices[s]);
            continue;
        }
        if side[s] != u8::MAX {
            continue;
        }
        // Complete bipartite means a single non-trivial component.
        if first.is_some() {
            return None;
        }
        first = Some(s);
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if side[b] == u8::MAX {
                    side[b] = 1 - side[a];
                    stack.push(b);
                } else if side[b] == side[a] {
                    return None;
                }
            }
        }
    }
    for s in 0..k {
        match side[s] {
            0 => b1.push(h.vertices[s]),
            1 => b2.push(h.vertices[s]),
            _ => {}
        }
    }
    let edges_inside = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges_inside != b1.len() * b2.len() {
        return None;
    }
    Some(BicliqueDecomposition { b1, b2, i: iso, x })
}

/// Minimum `X` such that `H - X` is an extended biclique. Among minimum sets the
/// lexicographically smallest one (over the sorted vertex order) is returned.
pub fn extended_biclique_distance(h: &DemandGraph) -> BicliqueDecomposition {
    let k = h.vertices.len();
    for size in 0..=k {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let mut removed = vec![false; k];
            for &c in &chosen {
                removed[c] = true;
            }
            if let Some(dec) = split(h, &removed) {
                return dec;
            }
            if !next_combination(&mut chosen, k) {
                break;
            }
        }
    }
    unreachable!("removing every vertex always leaves an extended biclique")
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `H[V' ∩ V(H)]`.
pub fn induced_demands(h: &DemandGraph, keep: &[VertexId]) -> DemandGraph {
    let inside = |v: VertexId| keep.contains(&v);
    DemandGraph::new(h.vertices.iter().copied().filter(|&v| inside(v)), h.edges.iter().copied().filter(|&(u, v)| inside(u) && inside(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize) -> DemandGraph {
        let mut e = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                e.push((u, v));
            }
        }
        DemandGraph::new(0..k, e)
    }

    #[test]
    fn biclique_has_mu_zero() {
        let h = DemandGraph::new(0..5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let d = extended_biclique_distance(&h);
        assert_eq!(d.mu(), 0);
        assert_eq!(d.b1, vec![0, 1]);
        assert_eq!(d.b2, vec![2, 3, 4]);
    }

    #[test]
    fn triangle_needs_one_deletion() {
        let d = extended_biclique_distance(&complete(3));
        assert_eq!(d.x, vec![0]);
        assert_eq!((d.b1.clone(), d.b2.clone()), (vec![1], vec![2]));
    }

    #[test]
    fn edgeless_is_all_isolated() {
        let d = extended_biclique_distance(&DemandGraph::new(0..4, []));
        assert_eq!(d.mu(), 0);
        assert_eq!(d.i, vec![0, 1, 2, 3]);
        assert!(d.b1.is_empty() && d.b2.is_empty());
    }

    #[test]
    fn two_disjoint_edges_need_one_deletion() {
        let d = extended_biclique_distance(&DemandGraph::new(0..4, [(0, 1), (2, 3)]));
        assert_eq!(d.x, vec![0]);
        assert_eq!(d.i, vec![1]);
    }

    #[test]
    fn induced() {
        let k3 = DemandGraph::new([5, 6, 7], [(5, 6), (6, 7), (5, 7)]);
        assert_eq!(induced_demands(&k3, &[5, 6]), DemandGraph::new([5, 6], [(5, 6)]));
        assert_eq!(induced_demands(&k3, &[1, 2]), DemandGraph::default());
        let k22 = DemandGraph::new(0..4, [(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(induced_demands(&k22, &[0, 2, 3]), DemandGraph::new([0, 2, 3], [(0, 2), (0, 3)]));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
