use crate::graph::{mask, EdgeId, Graph, VertexId};
use std::collections::VecDeque;

/// Smallest number of `S0` edges on a path from `Y1` to `Y2`, or `None` when no
/// path exists. 0/1 BFS: edges of `S0` cost 1, all others 0.
pub fn cut_distance(g: &Graph, s0: &[EdgeId], y1: &[VertexId], y2: &[VertexId]) -> Option<usize> {
    let in_s0 = {
        let mut m = vec![false; g.m()];
        for &e in s0 {
            m[e] = true;
        }
        m
    };
    let target = mask(g.n(), y2);
    let mut dist = vec![usize::MAX; g.n()];
    let mut deque = VecDeque::new();
    for &v in y1 {
        dist[v] = 0;
        deque.push_back(v);
    }
    while let Some(u) = deque.pop_front() {
        if target[u] {
            return Some(dist[u]);
        }
        for &(w, e) in g.adj(u) {
            let cost = usize::from(in_s0[e]);
            if dist[u] + cost < dist[w] {
                dist[w] = dist[u] + cost;
                if cost == 0 {
                    deque.push_front(w);
                } else {
                    deque.push_back(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(cut_distance(&path, &[], &[0], &[2]), Some(0));
        assert_eq!(cut_distance(&path, &[0, 1], &[0], &[2]), Some(2));
        assert_eq!(cut_distance(&Graph::new(2, vec![]), &[], &[0], &[1]), None);
        // 0-1-2 with one cut edge, 0-3-4-5-2 with three.
        let g = Graph::new(6, vec![(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (2, 5)]);
        assert_eq!(cut_distance(&g, &[0, 2, 3, 4], &[0], &[2]), Some(1));
    }
}
