use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

/// Largest component handled by [`treewidth_exact`].
pub const TREEWIDTH_MAX_N: usize = 24;

/// Exact treewidth by branch and bound over elimination orders. Loops and
/// parallel edges are ignored. An edgeless graph has treewidth 0 (and the
/// empty graph too).
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    let mut best = 0;
    for comp in g.induced_components(&vec![true; g.n()]) {
        if comp.len() > TREEWIDTH_MAX_N {
            return Err(Error::SizeBound(format!("treewidth component of {} vertices exceeds {TREEWIDTH_MAX_N}", comp.len())));
        }
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in comp.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u32; comp.len()];
        for &(u, v) in g.edges() {
            if u != v && index[u] != usize::MAX {
                adj[index[u]] |= 1 << index[v];
                adj[index[v]] |= 1 << index[u];
            }
        }
        best = best.max(component_treewidth(&adj));
    }
    Ok(best)
}

fn component_treewidth(adj: &[u32]) -> usize {
    let n = adj.len();
    if n <= 1 {
        return 0;
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut s = Search { upper: greedy_min_degree(adj, full), memo: HashMap::new() };
    s.run(adj.to_vec(), full, 0);
    s.upper
}

fn greedy_min_degree(adj: &[u32], full: u32) -> usize {
    let mut a = adj.to_vec();
    let mut alive = full;
    let mut width = 0;
    while alive != 0 {
        let v = bits(alive).min_by_key(|&v| (a[v] & alive).count_ones()).unwrap();
        width = width.max((a[v] & alive).count_ones() as usize);
        eliminate(&mut a, alive, v);
        alive &= !(1 << v);
    }
    width
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn eliminate(a: &mut [u32], alive: u32, v: usize) {
    let nb = a[v] & alive & !(1 << v);
    for w in bits(nb) {
        a[w] |= nb & !(1 << w);
    }
}

struct Search {
    upper: usize,
    /// Smallest width seen on reaching an alive set; the remaining graph only
    /// depends on which vertices are gone.
    memo: HashMap<u32, usize>,
}

impl Search {
    fn run(&mut self, mut a: Vec<u32>, mut alive: u32, mut width: usize) {
        // Simplicial vertices can always go first.
        loop {
            let pick = bits(alive).find(|&v| {
                let nb = a[v] & alive;
                bits(nb).all(|w| (a[w] | (1 << w)) & nb == nb)
            });
            match pick {
                Some(v) => {
                    width = width.max((a[v] & alive).count_ones() as usize);
                    eliminate(&mut a, alive, v);
                    alive &= !(1 << v);
                }
                None => break,
            }
        }
        if width >= self.upper {
            return;
        }
        if alive.count_ones() as usize <= width + 1 {
            self.upper = width;
            return;
        }
        if self.memo.get(&alive).is_some_and(|&w| w <= width) {
            return;
        }
        self.memo.insert(alive, width);
        let lower = bits(alive).map(|v| (a[v] & alive).count_ones() as usize).min().unwrap_or(0);
        if lower.max(width) >= self.upper {
            return;
        }
        let mut order: Vec<usize> = bits(alive).collect();
        order.sort_by_key(|&v| (a[v] & alive).count_ones());
        for v in order {
            let d = (a[v] & alive).count_ones() as usize;
            if d.max(width) >= self.upper {
                continue;
            }
            let mut next = a.clone();
            eliminate(&mut next, alive, v);
            self.run(next, alive & !(1 << v), width.max(d));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(r: usize, c: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let v = i * c + j;
                if j + 1 < c {
                    e.push((v, v + 1));
                }
                if i + 1 < r {
                    e.push((v, v + c));
                }
            }
        }
        Graph::new(r * c, e)
    }

    #[test]
    fn small_families() {
        assert_eq!(treewidth_exact(&Graph::new(0, vec![])).unwrap(), 0);
        assert_eq!(treewidth_exact(&Graph::new(3, vec![])).unwrap(), 0);
        assert_eq!(treewidth_exact(&Graph::new(4, vec![(0, 1), (1, 2), (2, 3)])).unwrap(), 1);
        assert_eq!(treewidth_exact(&Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)])).unwrap(), 2);
        let mut k5 = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        assert_eq!(treewidth_exact(&Graph::new(5, k5)).unwrap(), 4);
        assert_eq!(treewidth_exact(&grid(3, 3)).unwrap(), 3);
        assert_eq!(treewidth_exact(&grid(4, 4)).unwrap(), 4);
        assert_eq!(treewidth_exact(&grid(2, 6)).unwrap(), 2);
    }

    #[test]
    fn loops_and_multi_edges_ignored() {
        let g = Graph::new(2, vec![(0, 0), (0, 1), (0, 1)]);
        assert_eq!(treewidth_exact(&g).unwrap(), 1);
    }

    #[test]
    fn petersen_is_four() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(treewidth_exact(&Graph::new(10, e)).unwrap(), 4);
    }
}
