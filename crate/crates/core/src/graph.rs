//! Plain undirected graphs over dense vertex ids.

use petgraph::unionfind::UnionFind;
use std::collections::VecDeque;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected graph with stable edge ids (indices into `edges`).
///
/// Parallel edges and loops are representable; the multicut instances never
/// contain them, but dual graphs do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for {n} vertices");
            adj[u].push((v, id));
            if u != v {
                adj[v].push((u, id));
            }
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident `(neighbor, edge)` pairs of `v` in edge insertion order.
    pub fn adj(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].iter().any(|&(w, _)| w == v)
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// The graph on the same vertex set keeping only edges with `keep[e]`.
    /// Returns the subgraph and the map from new edge ids to old ones.
    pub fn filter_edges(&self, keep: impl Fn(EdgeId) -> bool) -> (Graph, Vec<EdgeId>) {
        let mut map = Vec::new();
        let mut edges = Vec::new();
        for (id, &e) in self.edges.iter().enumerate() {
            if keep(id) {
                map.push(id);
                edges.push(e);
            }
        }
        (Graph::new(self.n, edges), map)
    }

    /// Component label per vertex, numbered in order of each component's lowest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_where(|_| true)
    }

    /// Component labels of the graph restricted to edges with `usable(e)`.
    pub fn component_labels_where(&self, usable: impl Fn(EdgeId) -> bool) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if usable(id) {
                uf.union(u, v);
            }
        }
        relabel(&uf, self.n)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |&c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Number of components of the subgraph induced by `set`.
    pub fn induced_component_count(&self, set: &[bool]) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if !set[s] || seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if set[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// Vertex sets of the components of the subgraph induced by `set`, each sorted,
    /// listed in order of their lowest vertex.
    pub fn induced_components(&self, set: &[bool]) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !set[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if set[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Dense labels from a union-find, numbered by first occurrence.
pub(crate) fn relabel(uf: &UnionFind<usize>, n: usize) -> Vec<usize> {
    let mut root_label = vec![usize::MAX; n];
    let mut labels = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let r = uf.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = next;
            next += 1;
        }
        labels[v] = root_label[r];
    }
    labels
}

/// Boolean membership mask for a vertex list.
pub fn mask(n: usize, vertices: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vertices {
        m[v] = true;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_are_labelled_by_lowest_vertex() {
        let g = Graph::new(5, vec![(3, 4), (0, 2)]);
        assert_eq!(g.component_labels(), vec![0, 1, 0, 2, 2]);
        assert_eq!(g.component_count(), 3);
        assert!(!g.is_connected());
    }

    #[test]
    fn induced_components() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        let set = mask(5, &[0, 1, 3, 4]);
        assert_eq!(g.induced_component_count(&set), 2);
        assert_eq!(g.induced_components(&set), vec![vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn filter_edges_keeps_vertex_set() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]);
        let (h, map) = g.filter_edges(|e| e != 1);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(map, vec![0, 2]);
    }
}
