use crate::graph::{Graph, VertexId};
use std::collections::VecDeque;

/// Whether every vertex is within distance `r` of some vertex of `set`.
pub fn dominating_check(g: &Graph, set: &[VertexId], r: usize) -> bool {
    let dist = multi_source_distances(g, set);
    dist.iter().all(|d| d.is_some_and(|d| d <= r))
}

/// BFS distances from a vertex set; `None` when unreachable.
pub fn multi_source_distances(g: &Graph, sources: &[VertexId]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut q = VecDeque::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            q.push_back(s);
        }
    }
    while let Some(v) = q.pop_front() {
        let d = dist[v].unwrap();
        for &(w, _) in g.adj(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_domination() {
        let g = Graph::new(7, (0..6).map(|i| (i, i + 1)).collect());
        assert!(dominating_check(&g, &[3], 3));
        assert!(!dominating_check(&g, &[3], 2));
        assert!(dominating_check(&g, &[1, 4], 2));
        assert!(!dominating_check(&g, &[1, 4], 1));
        assert!(dominating_check(&g, &[1, 3, 5], 1));
        assert!(!dominating_check(&g, &[], 10));
        assert!(dominating_check(&Graph::new(0, vec![]), &[], 0));
    }
}
